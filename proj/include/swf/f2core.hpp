#pragma once

// Dense linear algebra over the two-element field.
//
// Rows are bit-packed into 64-bit words; elimination always pivots on the
// first set bit so every reduction is reproducible bit-for-bit.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace swf::f2 {

class BitVector {
public:
    BitVector() = default;
    explicit BitVector(std::size_t size);
    BitVector(std::initializer_list<int> bits);
    static BitVector from_bits(std::span<const int> bits);

    std::size_t size() const noexcept { return size_; }
    bool get(std::size_t i) const;
    void set(std::size_t i, bool value = true);
    void flip(std::size_t i);
    bool any() const noexcept;
    std::size_t popcount() const noexcept;

    BitVector& operator^=(const BitVector& other);
    friend BitVector operator^(BitVector lhs, const BitVector& rhs) { return lhs ^= rhs; }
    friend bool operator==(const BitVector&, const BitVector&) = default;

    std::span<const std::uint64_t> words() const noexcept { return words_; }
    std::string to_string() const;

private:
    std::size_t size_ = 0;
    std::vector<std::uint64_t> words_;
};

class BitMatrix {
public:
    BitMatrix() = default;
    BitMatrix(std::size_t rows, std::size_t cols);

    static BitMatrix zero(std::size_t rows, std::size_t cols) { return BitMatrix(rows, cols); }
    static BitMatrix identity(std::size_t n);
    /// Row-major literal, e.g. from_rows({{1, 1}, {0, 1}}).
    static BitMatrix from_rows(std::initializer_list<std::initializer_list<int>> rows);
    /// Matrix whose columns are the given vectors (all of length `rows`).
    static BitMatrix from_columns(std::size_t rows, std::span<const BitVector> columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool empty() const noexcept { return rows_ == 0 || cols_ == 0; }

    bool get(std::size_t r, std::size_t c) const;
    void set(std::size_t r, std::size_t c, bool value = true);

    BitVector row(std::size_t r) const;
    BitVector column(std::size_t c) const;
    void xor_row_into(std::size_t src, std::size_t dst);
    void swap_rows(std::size_t a, std::size_t b);

    bool is_zero() const noexcept;
    BitMatrix transpose() const;

    friend BitMatrix operator*(const BitMatrix& a, const BitMatrix& b);
    friend BitVector operator*(const BitMatrix& a, const BitVector& x);
    friend BitMatrix operator+(const BitMatrix& a, const BitMatrix& b);
    friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

    std::string to_string() const;

private:
    std::uint64_t* row_words(std::size_t r) { return data_.data() + r * stride_; }
    const std::uint64_t* row_words(std::size_t r) const { return data_.data() + r * stride_; }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::size_t stride_ = 0;
    std::vector<std::uint64_t> data_;
};

/// Reduced row echelon form; `pivots[i]` is the pivot column of row i.
struct Echelon {
    BitMatrix reduced;
    std::vector<std::size_t> pivots;
};

Echelon row_reduce(BitMatrix m);

std::size_t rank(const BitMatrix& m);

/// Some x with m * x == target, or nullopt if target is outside the column span.
std::optional<BitVector> solve(const BitMatrix& m, const BitVector& target);

/// Columns form a basis of ker(m).
BitMatrix kernel_basis(const BitMatrix& m);

/// Columns form a basis of the column span of m (pivot columns of m).
BitMatrix image_basis(const BitMatrix& m);

/// Columns form a basis of span(a) ∩ span(b); a and b have equal row counts.
BitMatrix intersect_spans(const BitMatrix& a, const BitMatrix& b);

/// Finite chain complex; boundary(d) maps degree d to degree d-1 and has shape
/// dim(d-1) x dim(d). Missing boundaries are zero.
class ChainComplex {
public:
    ChainComplex() = default;

    /// Throws Error(invalid_complex) on a shape mismatch or when ∂∂ != 0.
    ChainComplex(std::map<int, std::size_t> dims, std::map<int, BitMatrix> boundaries);

    std::size_t dim(int degree) const;
    BitMatrix boundary(int degree) const;
    const std::map<int, std::size_t>& dims() const noexcept { return dims_; }

private:
    std::map<int, std::size_t> dims_;
    std::map<int, BitMatrix> boundaries_;
};

/// dim H_d = dim C_d - rank ∂_d - rank ∂_{d+1}, for every degree in the support.
std::map<int, std::size_t> homology_dims(const ChainComplex& c);

} // namespace swf::f2
