#ifndef SPLICE_SEIFERT_HPP
#define SPLICE_SEIFERT_HPP

#include <array>
#include <vector>

#include <gmpxx.h>

namespace splice {

// Per-node invariants of one Seifert piece with denominators a_1..a_k.
// Identities: sum b_i sigma_i = 1, a_i delta_i + b_i sigma_i = 1,
// sum b_i/a_i = 1/A, A = prod a_i > 0.
struct SeifertNodeData {
    std::vector<mpz_class> a;
    std::vector<mpz_class> b;
    std::vector<mpz_class> sigma;  // sigma_i = A / a_i
    std::vector<mpz_class> delta;
    mpz_class A;
};

using Mat2 = std::array<std::array<mpz_class, 2>, 2>;

// Change of basis between (M_i, L_i) and (Q_i, H) on the i-th boundary torus:
//   (M_i, L_i) = to_ql * (Q_i, H),  (Q_i, H) = to_ml * (M_i, L_i).
struct BasisChange {
    Mat2 to_ql;  // [[a_i, b_i], [-sigma_i, delta_i]]
    Mat2 to_ml;  // [[delta_i, -b_i], [sigma_i, a_i]]
};

// Canonical numerators: b_i = sigma_i^{-1} mod a_i in [0, a_i) for i >= 2,
// b_1 = (1 - sum_{i>=2} b_i sigma_i) / sigma_1. Throws on non-coprime input.
std::vector<mpz_class> solve_b(const std::vector<mpz_class>& a);

SeifertNodeData node_data(const std::vector<mpz_class>& a);
SeifertNodeData node_data(const std::vector<long long>& a);

BasisChange basis_change(const SeifertNodeData& nd, std::size_t i);  // i is 1-based

Mat2 mat_mul(const Mat2& x, const Mat2& y);
mpz_class mat_det(const Mat2& m);

}  // namespace splice

#endif
