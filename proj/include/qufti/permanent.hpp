// qufti/permanent.hpp
//
// Exact matrix permanents.  permanent_ryser is the production kernel
// (inclusion-exclusion with Gray-code column-sum updates, O(2^n * n));
// permanent_naive is the brute-force n! oracle used to cross-check it; and
// permanent_minor_gradient is the directional derivative of the permanent
// needed for analytic Fisher-information gradients.

#pragma once

#include <algorithm>
#include <bit>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "qufti/complex_matrix.hpp"
#include "qufti/error.hpp"

namespace qufti {

namespace detail {

inline void require_square(const ComplexMatrix& m, const char* who, std::size_t max_dim) {
    if (!m.is_square()) {
        throw ShapeError(std::string(who) + ": matrix is not square (" +
                         std::to_string(m.rows()) + "x" + std::to_string(m.cols()) + ")");
    }
    if (m.rows() > max_dim) {
        throw SizeGuardError(std::string(who) + ": dimension " + std::to_string(m.rows()) +
                             " exceeds the cost guard of " + std::to_string(max_dim));
    }
}

}  // namespace detail

/// Permanent via Ryser's inclusion-exclusion formula,
///   perm(A) = (-1)^n * sum_{S != {}} (-1)^{|S|} prod_r sum_{c in S} A_{rc},
/// walking the column subsets in Gray-code order so each step updates the
/// row sums with a single column.  O(2^n * n) arithmetic; guarded at n <= 24
/// because the cost is exponential and should fail loudly, not degrade.
/// The empty 0x0 permanent is 1 by convention.
inline complex permanent_ryser(const ComplexMatrix& m) {
    detail::require_square(m, "permanent_ryser", 24);
    const std::size_t n = m.rows();
    if (n == 0) return complex(1.0, 0.0);

    std::vector<complex> row_sums(n, complex(0.0, 0.0));
    complex total(0.0, 0.0);
    std::uint32_t gray = 0;
    const std::uint64_t count = std::uint64_t(1) << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint32_t next_gray = static_cast<std::uint32_t>(k ^ (k >> 1));
        const std::uint32_t changed = gray ^ next_gray;
        const std::size_t col = static_cast<std::size_t>(std::countr_zero(changed));
        const double direction = (next_gray & changed) ? 1.0 : -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            row_sums[r] += direction * m(r, col);
        }
        gray = next_gray;

        complex product(1.0, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            product *= row_sums[r];
        }
        const int parity = std::popcount(next_gray) & 1;
        total += parity ? product : -product;
    }
    // Overall sign (-1)^n combined with the (-1)^{|S|} applied above.
    return (n % 2 == 0) ? -total : total;
}

/// Brute-force permanent: direct sum over all n! permutations.  Test oracle
/// only; guarded at n <= 9.
inline complex permanent_naive(const ComplexMatrix& m) {
    detail::require_square(m, "permanent_naive", 9);
    const std::size_t n = m.rows();
    if (n == 0) return complex(1.0, 0.0);

    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    complex total(0.0, 0.0);
    do {
        complex product(1.0, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            product *= m(r, perm[r]);
        }
        total += product;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

/// Permanent of W together with the directional derivatives
/// d/de perm(W + e*D)|_{e=0} for every direction D in `directions`, all from
/// a single Ryser sweep.  The derivative uses multilinearity in the rows:
/// substitute one row of W at a time by the matching row of D and sum the
/// resulting permanents, which inside Ryser's formula is
///   sum_S (-1)^{...} sum_r (prod_{r' != r} R_{r'}(S)) * D_r(S),
/// evaluated with prefix/suffix products of the row sums.  Sharing one
/// Gray-code walk across the permanent and all directions costs O(2^n * n*d)
/// instead of the O(2^n * n^3) per direction that per-minor expansion needs,
/// which is what makes exact Fisher-information Jacobians affordable.
struct PermanentWithGradient {
    complex value;                     ///< perm(W)
    std::vector<complex> directional;  ///< one derivative per direction
};

inline PermanentWithGradient permanent_with_gradient(
    const ComplexMatrix& w, const std::vector<ComplexMatrix>& directions) {
    detail::require_square(w, "permanent_with_gradient", 24);
    for (const ComplexMatrix& d : directions) {
        if (d.rows() != w.rows() || d.cols() != w.cols()) {
            throw ShapeError("permanent_with_gradient: direction shape differs from W");
        }
    }
    const std::size_t n = w.rows();
    const std::size_t nd = directions.size();
    PermanentWithGradient out{complex(0.0, 0.0), std::vector<complex>(nd, complex(0.0, 0.0))};
    if (n == 0) {
        out.value = complex(1.0, 0.0);
        return out;
    }

    std::vector<complex> row_sums(n, complex(0.0, 0.0));
    std::vector<complex> dir_sums(nd * n, complex(0.0, 0.0));
    std::vector<complex> prefix(n + 1);
    std::vector<complex> suffix(n + 1);
    complex total(0.0, 0.0);
    std::vector<complex> dir_totals(nd, complex(0.0, 0.0));

    std::uint32_t gray = 0;
    const std::uint64_t count = std::uint64_t(1) << n;
    for (std::uint64_t k = 1; k < count; ++k) {
        const std::uint32_t next_gray = static_cast<std::uint32_t>(k ^ (k >> 1));
        const std::uint32_t changed = gray ^ next_gray;
        const std::size_t col = static_cast<std::size_t>(std::countr_zero(changed));
        const double direction = (next_gray & changed) ? 1.0 : -1.0;
        for (std::size_t r = 0; r < n; ++r) {
            row_sums[r] += direction * w(r, col);
        }
        for (std::size_t d = 0; d < nd; ++d) {
            complex* sums = dir_sums.data() + d * n;
            const ComplexMatrix& dm = directions[d];
            for (std::size_t r = 0; r < n; ++r) {
                sums[r] += direction * dm(r, col);
            }
        }
        gray = next_gray;

        prefix[0] = complex(1.0, 0.0);
        for (std::size_t r = 0; r < n; ++r) {
            prefix[r + 1] = prefix[r] * row_sums[r];
        }
        suffix[n] = complex(1.0, 0.0);
        for (std::size_t r = n; r-- > 0;) {
            suffix[r] = row_sums[r] * suffix[r + 1];
        }

        const int parity = std::popcount(next_gray) & 1;
        const double sign = parity ? 1.0 : -1.0;
        total += sign * prefix[n];
        for (std::size_t d = 0; d < nd; ++d) {
            const complex* sums = dir_sums.data() + d * n;
            complex g(0.0, 0.0);
            for (std::size_t r = 0; r < n; ++r) {
                g += prefix[r] * suffix[r + 1] * sums[r];
            }
            dir_totals[d] += sign * g;
        }
    }
    // Overall sign (-1)^n combined with the (-1)^{|S|} applied above.
    const double overall = (n % 2 == 0) ? -1.0 : 1.0;
    out.value = overall * total;
    for (std::size_t d = 0; d < nd; ++d) {
        out.directional[d] = overall * dir_totals[d];
    }
    return out;
}

/// Directional derivative of the permanent:
///   d/de perm(W + e*Wdot) |_{e=0} = sum_{r,c} Wdot_{rc} * perm(minor_{rc}(W)),
/// where minor_{rc} deletes row r and column c.  This is the product rule
/// applied entry by entry; it is the reference implementation that
/// permanent_with_gradient is validated against.
inline complex permanent_minor_gradient(const ComplexMatrix& w, const ComplexMatrix& wdot) {
    detail::require_square(w, "permanent_minor_gradient", 24);
    if (w.rows() != wdot.rows() || w.cols() != wdot.cols()) {
        throw ShapeError("permanent_minor_gradient: W and Wdot shapes differ");
    }
    const std::size_t n = w.rows();
    if (n == 0) return complex(0.0, 0.0);

    ComplexMatrix minor(n - 1, n - 1);
    complex total(0.0, 0.0);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) {
            const complex weight = wdot(r, c);
            if (weight == complex(0.0, 0.0)) continue;
            for (std::size_t i = 0, mi = 0; i < n; ++i) {
                if (i == r) continue;
                for (std::size_t j = 0, mj = 0; j < n; ++j) {
                    if (j == c) continue;
                    minor(mi, mj) = w(i, j);
                    ++mj;
                }
                ++mi;
            }
            total += weight * permanent_ryser(minor);
        }
    }
    return total;
}

}  // namespace qufti
