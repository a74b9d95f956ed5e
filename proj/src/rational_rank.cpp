#include "swf/rational_rank.hpp"

#include "swf/error.hpp"
#include "swf/f2core.hpp"

#include <limits>

namespace swf {

namespace {

__extension__ using wide = __int128;

std::int64_t checked(wide x)
{
    if (x > std::numeric_limits<std::int64_t>::max() || x < std::numeric_limits<std::int64_t>::min()) {
        throw Error(ErrorKind::input, "rational_rank: intermediate value overflows 64 bits");
    }
    return static_cast<std::int64_t>(x);
}

} // namespace

std::size_t rational_rank(IntMatrix m)
{
    if (m.empty()) return 0;
    const std::size_t ncols = m.front().size();
    for (const auto& row : m) {
        if (row.size() != ncols) throw Error(ErrorKind::input, "rational_rank: ragged rows");
    }

    std::size_t r = 0;
    std::int64_t prev = 1;
    for (std::size_t c = 0; c < ncols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            for (std::size_t j = c + 1; j < ncols; ++j) {
                const wide num = static_cast<wide>(m[r][c]) * m[i][j] - static_cast<wide>(m[i][c]) * m[r][j];
                m[i][j] = checked(num / prev); // exact by Sylvester's identity
            }
            m[i][c] = 0;
        }
        prev = m[r][c];
        ++r;
    }
    return r;
}

std::size_t mod2_rank(const IntMatrix& rows)
{
    if (rows.empty()) return 0;
    f2::BitMatrix b(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            if (rows[i][j] % 2 != 0) b.set(i, j);
        }
    }
    return f2::rank(b);
}

} // namespace swf
