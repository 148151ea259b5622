#include "splice/seifert.hpp"

#include <stdexcept>

namespace splice {

namespace {

mpz_class product_except(const std::vector<mpz_class>& a, std::size_t skip) {
    mpz_class p = 1;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (j != skip) p *= a[j];
    return p;
}

void check_input(const std::vector<mpz_class>& a) {
    if (a.empty()) throw std::runtime_error("empty weight list");
    mpz_class g;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] < 1) throw std::runtime_error("non-positive weight");
        for (std::size_t j = i + 1; j < a.size(); ++j) {
            mpz_gcd(g.get_mpz_t(), a[i].get_mpz_t(), a[j].get_mpz_t());
            if (g != 1) throw std::runtime_error("weights not pairwise coprime");
        }
    }
}

}  // namespace

std::vector<mpz_class> solve_b(const std::vector<mpz_class>& a) {
    check_input(a);
    const std::size_t k = a.size();
    std::vector<mpz_class> sigma(k);
    for (std::size_t i = 0; i < k; ++i) sigma[i] = product_except(a, i);

    std::vector<mpz_class> b(k);
    mpz_class rest = 0;  // sum_{i>=2} b_i sigma_i
    for (std::size_t i = 1; i < k; ++i) {
        if (a[i] == 1) {
            b[i] = 0;
        } else {
            mpz_class inv;
            if (mpz_invert(inv.get_mpz_t(), sigma[i].get_mpz_t(), a[i].get_mpz_t()) == 0)
                throw std::runtime_error("weights not pairwise coprime");
            mpz_mod(b[i].get_mpz_t(), inv.get_mpz_t(), a[i].get_mpz_t());
        }
        rest += b[i] * sigma[i];
    }
    mpz_class num = 1 - rest;
    mpz_class q, r;
    mpz_tdiv_qr(q.get_mpz_t(), r.get_mpz_t(), num.get_mpz_t(), sigma[0].get_mpz_t());
    if (r != 0) throw std::runtime_error("internal: b1 not integral");
    b[0] = q;
    return b;
}

SeifertNodeData node_data(const std::vector<mpz_class>& a) {
    SeifertNodeData nd;
    nd.a = a;
    nd.b = solve_b(a);
    const std::size_t k = a.size();
    nd.A = 1;
    for (const auto& ai : a) nd.A *= ai;
    nd.sigma.resize(k);
    nd.delta.resize(k);
    for (std::size_t i = 0; i < k; ++i) nd.sigma[i] = nd.A / a[i];
    // delta_i = sum_{j != i} b_j * prod_{l != i, l != j} a_l
    for (std::size_t i = 0; i < k; ++i) {
        mpz_class s = 0;
        for (std::size_t j = 0; j < k; ++j) {
            if (j == i) continue;
            s += nd.b[j] * (nd.sigma[i] / a[j]);
        }
        nd.delta[i] = s;
    }
    // exact sanity
    mpz_class chk = 0;
    for (std::size_t i = 0; i < k; ++i) chk += nd.b[i] * nd.sigma[i];
    if (chk != 1) throw std::runtime_error("internal: sum b_i sigma_i != 1");
    for (std::size_t i = 0; i < k; ++i)
        if (a[i] * nd.delta[i] + nd.b[i] * nd.sigma[i] != 1)
            throw std::runtime_error("internal: a_i delta_i + b_i sigma_i != 1");
    return nd;
}

SeifertNodeData node_data(const std::vector<long long>& a) {
    std::vector<mpz_class> z;
    z.reserve(a.size());
    for (auto x : a) z.emplace_back(static_cast<long>(x));
    return node_data(z);
}

BasisChange basis_change(const SeifertNodeData& nd, std::size_t i) {
    if (i < 1 || i > nd.a.size()) throw std::out_of_range("index out of range");
    const std::size_t j = i - 1;
    BasisChange bc;
    bc.to_ql = {{{nd.a[j], nd.b[j]}, {-nd.sigma[j], nd.delta[j]}}};
    bc.to_ml = {{{nd.delta[j], -nd.b[j]}, {nd.sigma[j], nd.a[j]}}};
    return bc;
}

Mat2 mat_mul(const Mat2& x, const Mat2& y) {
    Mat2 r;
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
    return r;
}

mpz_class mat_det(const Mat2& m) { return m[0][0] * m[1][1] - m[0][1] * m[1][0]; }

}  // namespace splice
