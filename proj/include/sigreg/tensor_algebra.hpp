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

#ifndef SIGREG_TENSOR_ALGEBRA_HPP
#define SIGREG_TENSOR_ALGEBRA_HPP

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace sigreg {

/// A word over the alphabet {1, ..., d}. The empty word indexes the constant
/// (level-0) coordinate.
///
/// Words order shortlex: shorter words first, then lexicographically. This is
/// also the order in which TruncatedTensor lays out its coefficients.
class Word {
public:
    Word() = default;
    Word(std::initializer_list<int> letters) : letters_(letters) {}
    explicit Word(std::vector<int> letters) : letters_(std::move(letters)) {}

    const std::vector<int>& letters() const noexcept { return letters_; }
    std::size_t size() const noexcept { return letters_.size(); }
    bool empty() const noexcept { return letters_.empty(); }
    int operator[](std::size_t i) const { return letters_[i]; }

    Word concat(const Word& other) const;
    Word append(int letter) const;
    /// Word with the last letter removed. Requires a non-empty word.
    Word prefix() const;
    int back() const { return letters_.back(); }

    /// Throws std::invalid_argument if any letter lies outside [1, d].
    void validate(int d) const;

    /// "(1,2,2)"; the empty word prints as "()".
    std::string to_string() const;

    friend bool operator==(const Word&, const Word&) = default;
    friend std::strong_ordering operator<=>(const Word& a, const Word& b);

private:
    std::vector<int> letters_;
};

/// Number of coefficients in T^n(R^d): sum_{k=0}^{n} d^k.
std::size_t tensor_size(int d, int n);

/// All words of length <= n over {1..d}, in shortlex order.
std::vector<Word> all_words(int d, int n);

/// An element of the truncated tensor algebra T^n(R^d).
///
/// Coefficients live in one flat array. Level k occupies d^k consecutive
/// entries starting at sum_{j<k} d^j, and a word (i_1..i_k) sits at offset
/// sum_j (i_j - 1) d^{k-j} inside its level (base-d positional encoding, which
/// is lexicographic order).
class TruncatedTensor {
public:
    TruncatedTensor() = default;
    /// The zero tensor.
    TruncatedTensor(int d, int n);
    /// Takes ownership of a flat coefficient array of length tensor_size(d, n).
    TruncatedTensor(int d, int n, std::vector<double> coefficients);

    /// The unit 1 = (1, 0, 0, ...).
    static TruncatedTensor unit(int d, int n);

    int dimension() const noexcept { return d_; }
    int degree() const noexcept { return n_; }

    std::span<const double> coefficients() const noexcept { return data_; }
    std::span<double> coefficients() noexcept { return data_; }
    std::span<const double> level(int k) const;
    std::span<double> level(int k);
    std::size_t level_offset(int k) const;

    /// Flat index of w. Throws if w is too long or has an out-of-range letter.
    std::size_t index_of(const Word& w) const;
    double operator[](const Word& w) const { return data_[index_of(w)]; }
    double& operator[](const Word& w) { return data_[index_of(w)]; }

    /// True when every coefficient is finite.
    bool is_finite() const;

    TruncatedTensor& operator+=(const TruncatedTensor& other);
    TruncatedTensor& operator-=(const TruncatedTensor& other);
    TruncatedTensor& operator*=(double scalar);

    /// In-place right multiplication by exp(v), truncated at the current degree.
    void mul_exp_inplace(std::span<const double> v);

private:
    int d_ = 0;
    int n_ = -1;
    std::vector<double> data_;
    std::vector<std::size_t> offsets_;

    void build_offsets();
};

TruncatedTensor tensor_add(const TruncatedTensor& a, const TruncatedTensor& b);
TruncatedTensor scalar_mul(double s, const TruncatedTensor& a);

/// Graded convolution product truncated at the shared degree.
TruncatedTensor tensor_mul(const TruncatedTensor& a, const TruncatedTensor& b);

/// exp(v) = sum_{k<=n} v^{(x)k} / k! for a level-1 vector v of length d.
TruncatedTensor tensor_exp(std::span<const double> v, int d, int n);

/// Levels 0..m of a.
TruncatedTensor truncate(const TruncatedTensor& a, int m);

/// Coefficient of w in a.
double project(const TruncatedTensor& a, const Word& w);

/// An element of T(E*): a finite linear combination of coordinate forms e_I^*.
/// Exact zero coefficients are never stored.
class LinearForm {
public:
    explicit LinearForm(int d) : d_(d) {}
    /// The coordinate form for a single word.
    static LinearForm coordinate(int d, const Word& w, double coefficient = 1.0);

    int dimension() const noexcept { return d_; }
    const std::map<Word, double>& terms() const noexcept { return terms_; }
    bool empty() const noexcept { return terms_.empty(); }
    /// Length of the longest word with a non-zero coefficient (0 if empty).
    std::size_t max_word_length() const;
    double coefficient(const Word& w) const;

    void add_term(const Word& w, double coefficient);
    LinearForm& operator+=(const LinearForm& other);
    LinearForm& operator*=(double scalar);

private:
    int d_;
    std::map<Word, double> terms_;
};

LinearForm operator+(LinearForm a, const LinearForm& b);
LinearForm operator*(double s, LinearForm a);

/// I ш J as a linear form: the sum over all interleavings of I and J,
/// multiplicities accumulated.
LinearForm shuffle_words(const Word& I, const Word& J, int d);

/// Bilinear extension of shuffle_words to linear forms.
LinearForm shuffle_forms(const LinearForm& f, const LinearForm& g);

/// sum_w f(w) * a[w]. Throws if f has a word longer than degree(a).
double apply_form(const LinearForm& f, const TruncatedTensor& a);

}  // namespace sigreg

#endif  // SIGREG_TENSOR_ALGEBRA_HPP
