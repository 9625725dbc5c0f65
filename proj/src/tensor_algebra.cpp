/* Copyright 2026 The sigreg Authors. All Rights Reserved.
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 * ========================================================================= */

#include "sigreg/tensor_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <utility>

namespace sigreg {

// ---------------------------------------------------------------------------
// Word

Word Word::concat(const Word& other) const {
    std::vector<int> out = letters_;
    out.insert(out.end(), other.letters_.begin(), other.letters_.end());
    return Word(std::move(out));
}

Word Word::append(int letter) const {
    std::vector<int> out = letters_;
    out.push_back(letter);
    return Word(std::move(out));
}

Word Word::prefix() const {
    if (letters_.empty()) throw std::invalid_argument("Word::prefix: empty word");
    return Word(std::vector<int>(letters_.begin(), letters_.end() - 1));
}

void Word::validate(int d) const {
    for (int l : letters_) {
        if (l < 1 || l > d) {
            throw std::invalid_argument("Word " + to_string() + ": letter " + std::to_string(l) +
                                        " outside [1, " + std::to_string(d) + "]");
        }
    }
}

std::string Word::to_string() const {
    std::string s = "(";
    for (std::size_t i = 0; i < letters_.size(); ++i) {
        if (i) s += ',';
        s += std::to_string(letters_[i]);
    }
    return s + ")";
}

std::strong_ordering operator<=>(const Word& a, const Word& b) {
    if (auto c = a.size() <=> b.size(); c != 0) return c;
    return a.letters_ <=> b.letters_;
}

std::size_t tensor_size(int d, int n) {
    std::size_t total = 0, p = 1;
    for (int k = 0; k <= n; ++k) {
        total += p;
        p *= static_cast<std::size_t>(d);
    }
    return total;
}

std::vector<Word> all_words(int d, int n) {
    std::vector<Word> out{Word{}};
    std::size_t begin = 0;
    for (int k = 1; k <= n; ++k) {
        const std::size_t end = out.size();
        for (std::size_t i = begin; i < end; ++i)
            for (int l = 1; l <= d; ++l) out.push_back(out[i].append(l));
        begin = end;
    }
    return out;
}

// ---------------------------------------------------------------------------
// TruncatedTensor

TruncatedTensor::TruncatedTensor(int d, int n) : d_(d), n_(n) {
    if (d < 1) throw std::invalid_argument("TruncatedTensor: dimension must be positive");
    if (n < 0) throw std::invalid_argument("TruncatedTensor: degree must be non-negative");
    data_.assign(tensor_size(d, n), 0.0);
    build_offsets();
}

TruncatedTensor::TruncatedTensor(int d, int n, std::vector<double> coefficients) : TruncatedTensor(d, n) {
    if (coefficients.size() != data_.size()) {
        throw std::invalid_argument("TruncatedTensor: expected " + std::to_string(data_.size()) +
                                    " coefficients, got " + std::to_string(coefficients.size()));
    }
    data_ = std::move(coefficients);
}

TruncatedTensor TruncatedTensor::unit(int d, int n) {
    TruncatedTensor t(d, n);
    t.data_[0] = 1.0;
    return t;
}

void TruncatedTensor::build_offsets() {
    offsets_.assign(static_cast<std::size_t>(n_) + 2, 0);
    std::size_t p = 1;
    for (int k = 0; k <= n_; ++k) {
        offsets_[k + 1] = offsets_[k] + p;
        p *= static_cast<std::size_t>(d_);
    }
}

std::size_t TruncatedTensor::level_offset(int k) const {
    if (k < 0 || k > n_) throw std::out_of_range("TruncatedTensor: level out of range");
    return offsets_[k];
}

std::span<const double> TruncatedTensor::level(int k) const {
    const std::size_t off = level_offset(k);
    return std::span<const double>(data_).subspan(off, offsets_[k + 1] - off);
}

std::span<double> TruncatedTensor::level(int k) {
    const std::size_t off = level_offset(k);
    return std::span<double>(data_).subspan(off, offsets_[k + 1] - off);
}

std::size_t TruncatedTensor::index_of(const Word& w) const {
    if (static_cast<int>(w.size()) > n_) {
        throw std::invalid_argument("word " + w.to_string() + " longer than truncation degree " +
                                    std::to_string(n_));
    }
    w.validate(d_);
    std::size_t idx = 0;
    for (int l : w.letters()) idx = idx * static_cast<std::size_t>(d_) + static_cast<std::size_t>(l - 1);
    return offsets_[w.size()] + idx;
}

bool TruncatedTensor::is_finite() const {
    return std::all_of(data_.begin(), data_.end(), [](double x) { return std::isfinite(x); });
}

namespace {
void require_same_shape(const TruncatedTensor& a, const TruncatedTensor& b, const char* op) {
    if (a.dimension() != b.dimension() || a.degree() != b.degree()) {
        throw std::invalid_argument(std::string(op) + ": shape mismatch (d=" + std::to_string(a.dimension()) +
                                    ",n=" + std::to_string(a.degree()) + ") vs (d=" +
                                    std::to_string(b.dimension()) + ",n=" + std::to_string(b.degree()) + ")");
    }
}
}  // namespace

TruncatedTensor& TruncatedTensor::operator+=(const TruncatedTensor& other) {
    require_same_shape(*this, other, "tensor_add");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += other.data_[i];
    return *this;
}

TruncatedTensor& TruncatedTensor::operator-=(const TruncatedTensor& other) {
    require_same_shape(*this, other, "tensor_sub");
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= other.data_[i];
    return *this;
}

TruncatedTensor& TruncatedTensor::operator*=(double scalar) {
    for (double& x : data_) x *= scalar;
    return *this;
}

void TruncatedTensor::mul_exp_inplace(std::span<const double> v) {
    if (static_cast<int>(v.size()) != d_) throw std::invalid_argument("mul_exp_inplace: increment has wrong length");
    const auto d = static_cast<std::size_t>(d_);
    std::vector<double> cur, next;
    cur.reserve(data_.size());
    next.reserve(data_.size());
    // Horner: level k of S (x) exp(v) is
    //   ((S_0 v/k + S_1) v/(k-1) + S_2) ... v/1 + S_k.
    // Levels are overwritten from the top so lower levels are still original.
    for (int k = n_; k >= 1; --k) {
        cur.assign(1, data_[0]);
        for (int j = 1; j <= k; ++j) {
            const double scale = 1.0 / static_cast<double>(k - j + 1);
            const auto src = level(j);
            next.resize(cur.size() * d);
            for (std::size_t a = 0; a < cur.size(); ++a) {
                const double ca = cur[a] * scale;
                for (std::size_t b = 0; b < d; ++b) next[a * d + b] = ca * v[b] + src[a * d + b];
            }
            cur.swap(next);
        }
        std::copy(cur.begin(), cur.end(), level(k).begin());
    }
}

TruncatedTensor tensor_add(const TruncatedTensor& a, const TruncatedTensor& b) {
    TruncatedTensor out = a;
    out += b;
    return out;
}

TruncatedTensor scalar_mul(double s, const TruncatedTensor& a) {
    TruncatedTensor out = a;
    out *= s;
    return out;
}

TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b) {
    require_same_shape(a, b, "tensor_mul");
    const int n = a.degree();
    TruncatedTensor out(a.dimension(), n);
    for (int k = 0; k <= n; ++k) {
        auto dst = out.level(k);
        for (int j = 0; j <= k; ++j) {
            const auto left = a.level(j);
            const auto right = b.level(k - j);
            const std::size_t rs = right.size();
            for (std::size_t x = 0; x < left.size(); ++x) {
                const double lx = left[x];
                if (lx == 0.0) continue;
                double* row = dst.data() + x * rs;
                for (std::size_t y = 0; y < rs; ++y) row[y] += lx * right[y];
            }
        }
    }
    return out;
}

TruncatedTensor tensor_exp(std::span<const double> v, int d, int n) {
    if (static_cast<int>(v.size()) != d) throw std::invalid_argument("tensor_exp: increment has wrong length");
    TruncatedTensor out = TruncatedTensor::unit(d, n);
    const auto du = static_cast<std::size_t>(d);
    for (int k = 1; k <= n; ++k) {
        const auto prev = out.level(k - 1);
        auto cur = out.level(k);
        const double inv_k = 1.0 / static_cast<double>(k);
        for (std::size_t x = 0; x < prev.size(); ++x)
            for (std::size_t y = 0; y < du; ++y) cur[x * du + y] = prev[x] * v[y] * inv_k;
    }
    return out;
}

TruncatedTensor truncate(const TruncatedTensor& a, int m) {
    if (m < 0 || m > a.degree()) {
        throw std::invalid_argument("truncate: target degree " + std::to_string(m) + " exceeds degree " +
                                    std::to_string(a.degree()));
    }
    const auto src = a.coefficients();
    return TruncatedTensor(a.dimension(), m,
                           std::vector<double>(src.begin(), src.begin() + tensor_size(a.dimension(), m)));
}

double project(const TruncatedTensor& a, const Word& w) { return a[w]; }

// ---------------------------------------------------------------------------
// LinearForm

LinearForm LinearForm::coordinate(int d, const Word& w, double coefficient) {
    LinearForm f(d);
    f.add_term(w, coefficient);
    return f;
}

std::size_t LinearForm::max_word_length() const {
    std::size_t m = 0;
    for (const auto& [w, c] : terms_) m = std::max(m, w.size());
    return m;
}

double LinearForm::coefficient(const Word& w) const {
    auto it = terms_.find(w);
    return it == terms_.end() ? 0.0 : it->second;
}

void LinearForm::add_term(const Word& w, double coefficient) {
    if (coefficient == 0.0) return;
    w.validate(d_);
    auto [it, inserted] = terms_.try_emplace(w, coefficient);
    if (!inserted) {
        it->second += coefficient;
        if (it->second == 0.0) terms_.erase(it);
    }
}

LinearForm& LinearForm::operator+=(const LinearForm& other) {
    if (other.d_ != d_) throw std::invalid_argument("LinearForm: dimension mismatch");
    for (const auto& [w, c] : other.terms_) add_term(w, c);
    return *this;
}

LinearForm& LinearForm::operator*=(double scalar) {
    if (scalar == 0.0) {
        terms_.clear();
        return *this;
    }
    for (auto& [w, c] : terms_) c *= scalar;
    return *this;
}

LinearForm operator+(LinearForm a, const LinearForm& b) {
    a += b;
    return a;
}

LinearForm operator*(double s, LinearForm a) {
    a *= s;
    return a;
}

namespace {

using ShuffleTerms = std::vector<std::pair<Word, double>>;

// Memo for word shuffles, shared across threads. Results do not depend on d,
// so the key is just the ordered pair of words.
class ShuffleCache {
public:
    const ShuffleTerms* find(const Word& a, const Word& b) const {
        std::shared_lock lock(mutex_);
        auto it = cache_.find({a, b});
        return it == cache_.end() ? nullptr : &it->second;
    }
    const ShuffleTerms& insert(const Word& a, const Word& b, ShuffleTerms terms) {
        std::unique_lock lock(mutex_);
        // std::map nodes are stable, so returned references outlive later inserts.
        return cache_.try_emplace({a, b}, std::move(terms)).first->second;
    }

private:
    mutable std::shared_mutex mutex_;
    std::map<std::pair<Word, Word>, ShuffleTerms> cache_;
};

ShuffleCache& shuffle_cache() {
    static ShuffleCache cache;
    return cache;
}

// (ua) ш (vb) = ((u ш vb) a) + ((ua ш v) b)
const ShuffleTerms& shuffle_memo(const Word& I, const Word& J) {
    auto& cache = shuffle_cache();
    if (const auto* hit = cache.find(I, J)) return *hit;

    ShuffleTerms out;
    if (I.empty()) {
        out.emplace_back(J, 1.0);
    } else if (J.empty()) {
        out.emplace_back(I, 1.0);
    } else {
        std::map<Word, double> acc;
        for (const auto& [w, c] : shuffle_memo(I.prefix(), J)) acc[w.append(I.back())] += c;
        for (const auto& [w, c] : shuffle_memo(I, J.prefix())) acc[w.append(J.back())] += c;
        out.assign(acc.begin(), acc.end());
    }
    return cache.insert(I, J, std::move(out));
}

}  // namespace

LinearForm shuffle_words(const Word& I, const Word& J, int d) {
    I.validate(d);
    J.validate(d);
    LinearForm out(d);
    for (const auto& [w, c] : shuffle_memo(I, J)) out.add_term(w, c);
    return out;
}

LinearForm shuffle_forms(const LinearForm& f, const LinearForm& g) {
    if (f.dimension() != g.dimension()) throw std::invalid_argument("shuffle_forms: dimension mismatch");
    LinearForm out(f.dimension());
    for (const auto& [wi, ci] : f.terms())
        for (const auto& [wj, cj] : g.terms())
            for (const auto& [w, c] : shuffle_memo(wi, wj)) out.add_term(w, ci * cj * c);
    return out;
}

double apply_form(const LinearForm& f, const TruncatedTensor& a) {
    if (f.dimension() != a.dimension()) throw std::invalid_argument("apply_form: dimension mismatch");
    double total = 0.0;
    for (const auto& [w, c] : f.terms()) total += c * a[w];
    return total;
}

}  // namespace sigreg
