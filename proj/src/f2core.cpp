#include "swf/f2core.hpp"

#include "swf/error.hpp"

#include <algorithm>
#include <bit>
#include <sstream>

namespace swf {

const char* to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::input: return "input";
    case ErrorKind::invalid_complex: return "invalid-complex";
    case ErrorKind::invalid_ideal: return "invalid-ideal";
    case ErrorKind::invalid_triple: return "invalid-triple";
    case ErrorKind::inconsistency: return "inconsistency";
    case ErrorKind::duality_range: return "duality-range";
    case ErrorKind::context: return "context";
    case ErrorKind::not_applicable: return "not-applicable";
    case ErrorKind::unavailable: return "unavailable";
    case ErrorKind::invalid_module: return "invalid-module";
    case ErrorKind::internal: return "internal";
    case ErrorKind::ambiguity: return "ambiguity";
    }
    return "unknown";
}

} // namespace swf

namespace swf::f2 {

namespace {

constexpr std::size_t kWordBits = 64;

std::size_t words_for(std::size_t bits) { return (bits + kWordBits - 1) / kWordBits; }

} // namespace

// ---------------------------------------------------------------- BitVector

BitVector::BitVector(std::size_t size) : size_(size), words_(words_for(size), 0) {}

BitVector::BitVector(std::initializer_list<int> bits) : BitVector(bits.size())
{
    std::size_t i = 0;
    for (int b : bits) {
        if (b & 1) set(i);
        ++i;
    }
}

BitVector BitVector::from_bits(std::span<const int> bits)
{
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] & 1) v.set(i);
    }
    return v;
}

bool BitVector::get(std::size_t i) const { return (words_[i / kWordBits] >> (i % kWordBits)) & 1U; }

void BitVector::set(std::size_t i, bool value)
{
    const std::uint64_t mask = std::uint64_t{1} << (i % kWordBits);
    if (value) {
        words_[i / kWordBits] |= mask;
    } else {
        words_[i / kWordBits] &= ~mask;
    }
}

void BitVector::flip(std::size_t i) { words_[i / kWordBits] ^= std::uint64_t{1} << (i % kWordBits); }

bool BitVector::any() const noexcept
{
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
}

std::size_t BitVector::popcount() const noexcept
{
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
}

BitVector& BitVector::operator^=(const BitVector& other)
{
    if (other.size_ != size_) throw Error(ErrorKind::input, "BitVector xor: length mismatch");
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
}

std::string BitVector::to_string() const
{
    std::string s;
    s.reserve(size_);
    for (std::size_t i = 0; i < size_; ++i) s.push_back(get(i) ? '1' : '0');
    return s;
}

// ---------------------------------------------------------------- BitMatrix

BitMatrix::BitMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), stride_(words_for(cols)), data_(rows * words_for(cols), 0)
{
}

BitMatrix BitMatrix::identity(std::size_t n)
{
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i);
    return m;
}

BitMatrix BitMatrix::from_rows(std::initializer_list<std::initializer_list<int>> rows)
{
    const std::size_t ncols = rows.size() == 0 ? 0 : rows.begin()->size();
    BitMatrix m(rows.size(), ncols);
    std::size_t r = 0;
    for (const auto& row : rows) {
        if (row.size() != ncols) throw Error(ErrorKind::input, "BitMatrix::from_rows: ragged rows");
        std::size_t c = 0;
        for (int b : row) {
            if (b & 1) m.set(r, c);
            ++c;
        }
        ++r;
    }
    return m;
}

BitMatrix BitMatrix::from_columns(std::size_t rows, std::span<const BitVector> columns)
{
    BitMatrix m(rows, columns.size());
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) throw Error(ErrorKind::input, "BitMatrix::from_columns: length mismatch");
        for (std::size_t r = 0; r < rows; ++r) {
            if (columns[c].get(r)) m.set(r, c);
        }
    }
    return m;
}

bool BitMatrix::get(std::size_t r, std::size_t c) const
{
    return (row_words(r)[c / kWordBits] >> (c % kWordBits)) & 1U;
}

void BitMatrix::set(std::size_t r, std::size_t c, bool value)
{
    const std::uint64_t mask = std::uint64_t{1} << (c % kWordBits);
    if (value) {
        row_words(r)[c / kWordBits] |= mask;
    } else {
        row_words(r)[c / kWordBits] &= ~mask;
    }
}

BitVector BitMatrix::row(std::size_t r) const
{
    BitVector v(cols_);
    for (std::size_t c = 0; c < cols_; ++c) {
        if (get(r, c)) v.set(c);
    }
    return v;
}

BitVector BitMatrix::column(std::size_t c) const
{
    BitVector v(rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        if (get(r, c)) v.set(r);
    }
    return v;
}

void BitMatrix::xor_row_into(std::size_t src, std::size_t dst)
{
    const std::uint64_t* s = row_words(src);
    std::uint64_t* d = row_words(dst);
    for (std::size_t w = 0; w < stride_; ++w) d[w] ^= s[w];
}

void BitMatrix::swap_rows(std::size_t a, std::size_t b)
{
    if (a == b) return;
    std::swap_ranges(row_words(a), row_words(a) + stride_, row_words(b));
}

bool BitMatrix::is_zero() const noexcept
{
    return std::all_of(data_.begin(), data_.end(), [](std::uint64_t w) { return w == 0; });
}

BitMatrix BitMatrix::transpose() const
{
    BitMatrix t(cols_, rows_);
    for (std::size_t r = 0; r < rows_; ++r) {
        for (std::size_t c = 0; c < cols_; ++c) {
            if (get(r, c)) t.set(c, r);
        }
    }
    return t;
}

BitMatrix operator*(const BitMatrix& a, const BitMatrix& b)
{
    if (a.cols_ != b.rows_) {
        throw Error(ErrorKind::input, "BitMatrix product: inner dimensions differ (" + std::to_string(a.cols_) +
                                          " vs " + std::to_string(b.rows_) + ")");
    }
    BitMatrix out(a.rows_, b.cols_);
    // Row i of the product is the xor of rows k of b with a(i,k) set.
    for (std::size_t i = 0; i < a.rows_; ++i) {
        std::uint64_t* dst = out.row_words(i);
        for (std::size_t k = 0; k < a.cols_; ++k) {
            if (!a.get(i, k)) continue;
            const std::uint64_t* src = b.row_words(k);
            for (std::size_t w = 0; w < out.stride_; ++w) dst[w] ^= src[w];
        }
    }
    return out;
}

BitVector operator*(const BitMatrix& a, const BitVector& x)
{
    if (a.cols_ != x.size()) throw Error(ErrorKind::input, "BitMatrix * BitVector: length mismatch");
    BitVector y(a.rows_);
    const auto xw = x.words();
    for (std::size_t r = 0; r < a.rows_; ++r) {
        const std::uint64_t* row = a.row_words(r);
        std::uint64_t acc = 0;
        for (std::size_t w = 0; w < a.stride_; ++w) acc ^= row[w] & xw[w];
        if (std::popcount(acc) & 1) y.set(r);
    }
    return y;
}

BitMatrix operator+(const BitMatrix& a, const BitMatrix& b)
{
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::input, "BitMatrix sum: shape mismatch");
    BitMatrix out = a;
    for (std::size_t i = 0; i < out.data_.size(); ++i) out.data_[i] ^= b.data_[i];
    return out;
}

std::string BitMatrix::to_string() const
{
    std::ostringstream os;
    os << '[';
    for (std::size_t r = 0; r < rows_; ++r) {
        if (r) os << ", ";
        os << row(r).to_string();
    }
    os << ']';
    return os.str();
}

// ---------------------------------------------------------------- elimination

Echelon row_reduce(BitMatrix m)
{
    Echelon out;
    std::size_t next = 0;
    for (std::size_t c = 0; c < m.cols() && next < m.rows(); ++c) {
        std::size_t p = next;
        while (p < m.rows() && !m.get(p, c)) ++p;
        if (p == m.rows()) continue;
        m.swap_rows(p, next);
        for (std::size_t r = 0; r < m.rows(); ++r) {
            if (r != next && m.get(r, c)) m.xor_row_into(next, r);
        }
        out.pivots.push_back(c);
        ++next;
    }
    out.reduced = std::move(m);
    return out;
}

std::size_t rank(const BitMatrix& m) { return row_reduce(m).pivots.size(); }

std::optional<BitVector> solve(const BitMatrix& m, const BitVector& target)
{
    if (target.size() != m.rows()) {
        throw Error(ErrorKind::input, "solve: target length " + std::to_string(target.size()) +
                                          " does not match row count " + std::to_string(m.rows()));
    }
    BitMatrix aug(m.rows(), m.cols() + 1);
    for (std::size_t r = 0; r < m.rows(); ++r) {
        for (std::size_t c = 0; c < m.cols(); ++c) {
            if (m.get(r, c)) aug.set(r, c);
        }
        if (target.get(r)) aug.set(r, m.cols());
    }
    const Echelon e = row_reduce(std::move(aug));
    BitVector x(m.cols());
    for (std::size_t i = 0; i < e.pivots.size(); ++i) {
        if (e.pivots[i] == m.cols()) return std::nullopt; // 0 = 1 row
        if (e.reduced.get(i, m.cols())) x.set(e.pivots[i]);
    }
    return x;
}

BitMatrix kernel_basis(const BitMatrix& m)
{
    const Echelon e = row_reduce(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : e.pivots) is_pivot[p] = true;

    std::vector<BitVector> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        BitVector x(m.cols());
        x.set(f);
        for (std::size_t i = 0; i < e.pivots.size(); ++i) {
            if (e.reduced.get(i, f)) x.set(e.pivots[i]);
        }
        basis.push_back(std::move(x));
    }
    return BitMatrix::from_columns(m.cols(), basis);
}

BitMatrix image_basis(const BitMatrix& m)
{
    const Echelon e = row_reduce(m);
    std::vector<BitVector> cols;
    cols.reserve(e.pivots.size());
    for (auto p : e.pivots) cols.push_back(m.column(p));
    return BitMatrix::from_columns(m.rows(), cols);
}

BitMatrix intersect_spans(const BitMatrix& a, const BitMatrix& b)
{
    if (a.rows() != b.rows()) throw Error(ErrorKind::input, "intersect_spans: ambient dimensions differ");
    const BitMatrix ab = image_basis(a);
    const BitMatrix bb = image_basis(b);
    // x in ker [A | B] gives A x_a = B x_b, a vector in both spans.
    BitMatrix joined(a.rows(), ab.cols() + bb.cols());
    for (std::size_t r = 0; r < a.rows(); ++r) {
        for (std::size_t c = 0; c < ab.cols(); ++c) {
            if (ab.get(r, c)) joined.set(r, c);
        }
        for (std::size_t c = 0; c < bb.cols(); ++c) {
            if (bb.get(r, c)) joined.set(r, ab.cols() + c);
        }
    }
    const BitMatrix ker = kernel_basis(joined);
    std::vector<BitVector> cols;
    for (std::size_t k = 0; k < ker.cols(); ++k) {
        BitVector xa(ab.cols());
        for (std::size_t c = 0; c < ab.cols(); ++c) {
            if (ker.get(c, k)) xa.set(c);
        }
        cols.push_back(ab * xa);
    }
    return image_basis(BitMatrix::from_columns(a.rows(), cols));
}

// ---------------------------------------------------------------- chain complexes

ChainComplex::ChainComplex(std::map<int, std::size_t> dims, std::map<int, BitMatrix> boundaries)
    : dims_(std::move(dims)), boundaries_(std::move(boundaries))
{
    for (auto it = dims_.begin(); it != dims_.end();) {
        it = it->second == 0 ? dims_.erase(it) : std::next(it);
    }
    for (const auto& [d, m] : boundaries_) {
        if (m.rows() != dim(d - 1) || m.cols() != dim(d)) {
            throw Error(ErrorKind::invalid_complex,
                        "boundary in degree " + std::to_string(d) + " has shape " + std::to_string(m.rows()) +
                            "x" + std::to_string(m.cols()) + ", expected " + std::to_string(dim(d - 1)) + "x" +
                            std::to_string(dim(d)));
        }
    }
    for (const auto& [d, m] : boundaries_) {
        auto below = boundaries_.find(d - 1);
        if (below == boundaries_.end() || below->second.empty() || m.empty()) continue;
        if (!(below->second * m).is_zero()) {
            throw Error(ErrorKind::invalid_complex,
                        "boundary composition nonzero from degree " + std::to_string(d));
        }
    }
}

std::size_t ChainComplex::dim(int degree) const
{
    auto it = dims_.find(degree);
    return it == dims_.end() ? 0 : it->second;
}

BitMatrix ChainComplex::boundary(int degree) const
{
    auto it = boundaries_.find(degree);
    return it == boundaries_.end() ? BitMatrix(dim(degree - 1), dim(degree)) : it->second;
}

std::map<int, std::size_t> homology_dims(const ChainComplex& c)
{
    std::map<int, std::size_t> out;
    for (const auto& [d, n] : c.dims()) {
        out[d] = n - rank(c.boundary(d)) - rank(c.boundary(d + 1));
    }
    return out;
}

} // namespace swf::f2
