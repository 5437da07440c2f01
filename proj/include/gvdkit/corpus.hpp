#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gvdkit/ideal.hpp"

namespace gvdkit {

namespace detail {

inline std::string matrix_var(std::size_t i, std::size_t j, std::size_t rows, std::size_t cols) {
    if (rows <= 9 && cols <= 9) return "x" + std::to_string(i) + std::to_string(j);
    return "x_" + std::to_string(i) + "_" + std::to_string(j);
}

/// Determinant by expansion along the first row.
inline Polynomial determinant(const std::vector<std::vector<Polynomial>>& m) {
    const auto n = m.size();
    if (n == 1) return m[0][0];
    Polynomial out(m[0][0].ring());
    for (std::size_t c = 0; c < n; ++c) {
        std::vector<std::vector<Polynomial>> sub;
        for (std::size_t r = 1; r < n; ++r) {
            std::vector<Polynomial> row;
            for (std::size_t k = 0; k < n; ++k)
                if (k != c) row.push_back(m[r][k]);
            sub.push_back(std::move(row));
        }
        auto term = m[0][c] * determinant(sub);
        out = c % 2 ? out - term : out + term;
    }
    return out;
}

inline void subsets(std::size_t n, std::size_t k, std::vector<std::vector<std::size_t>>& out) {
    std::vector<std::size_t> cur;
    auto rec = [&](auto& self, std::size_t start) -> void {
        if (cur.size() == k) {
            out.push_back(cur);
            return;
        }
        for (std::size_t i = start; i < n; ++i) {
            cur.push_back(i);
            self(self, i + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0);
}

/// All k-minors of the submatrix on rows [0, rows) and columns [0, cols).
inline std::vector<Polynomial> minors_of(const std::vector<std::vector<Polynomial>>& M, std::size_t k, std::size_t rows,
                                         std::size_t cols) {
    std::vector<Polynomial> out;
    if (k == 0 || k > rows || k > cols) return out;
    std::vector<std::vector<std::size_t>> rs, cs;
    subsets(rows, k, rs);
    subsets(cols, k, cs);
    for (const auto& r : rs)
        for (const auto& c : cs) {
            std::vector<std::vector<Polynomial>> sub;
            for (auto i : r) {
                std::vector<Polynomial> row;
                for (auto j : c) row.push_back(M[i][j]);
                sub.push_back(std::move(row));
            }
            auto d = determinant(sub);
            if (!d.is_zero()) out.push_back(d);
        }
    return out;
}

inline std::vector<std::vector<Polynomial>> generic_matrix(const RingPtr& R, std::size_t m, std::size_t n) {
    std::vector<std::vector<Polynomial>> M(m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            M[i].push_back(Polynomial::variable(R, R->ctx.require(matrix_var(i + 1, j + 1, m, n))));
    return M;
}

}  // namespace detail

/// r-minors of the generic m×n matrix; lex order with the last column greatest, bottom row first within a column.
inline Ideal minors(std::size_t r, std::size_t m, std::size_t n, FieldSpec field = FieldSpec::rationals()) {
    if (m == 0 || n == 0 || r == 0 || r > std::min(m, n)) throw BadParameter("minors needs 1 <= r <= min(m, n)");
    std::vector<std::string> names, order;
    for (std::size_t i = 1; i <= m; ++i)
        for (std::size_t j = 1; j <= n; ++j) names.push_back(detail::matrix_var(i, j, m, n));
    for (std::size_t j = n; j >= 1; --j)
        for (std::size_t i = m; i >= 1; --i) order.push_back(detail::matrix_var(i, j, m, n));
    VarContext ctx(names);
    auto R = make_ring(field, ctx, order_from_names(ctx, order));
    return Ideal(R, detail::minors_of(detail::generic_matrix(R, m, n), r, m, n));
}

/// G_d listed with the elements involving x_d first: x_i x_d - x_{i+1} x_{d-1}, then G_{d-1}.
inline std::vector<Polynomial> veronese_generators(const RingPtr& R, std::size_t d) {
    std::vector<Polynomial> out;
    auto x = [&](std::size_t i) { return Polynomial::variable(R, i); };
    for (std::size_t top = d; top >= 1; --top)
        for (std::size_t i = 0; i + 1 < top; ++i) out.push_back(x(i) * x(top) - x(i + 1) * x(top - 1));
    return out;
}

/// 2-minors of the 2×d Hankel matrix [x_0..x_{d-1}; x_1..x_d], in variables x_0..x_d with x_d greatest.
inline Ideal hankel(std::size_t d, FieldSpec field = FieldSpec::rationals()) {
    if (d < 1) throw BadParameter("hankel needs d >= 1");
    std::vector<std::string> names, order;
    for (std::size_t i = 0; i <= d; ++i) names.push_back("x" + std::to_string(i));
    for (std::size_t i = d + 1; i-- > 0;) order.push_back("x" + std::to_string(i));
    VarContext ctx(names);
    auto R = make_ring(field, ctx, order_from_names(ctx, order));
    return Ideal(R, veronese_generators(R, d));
}

inline std::vector<std::size_t> parse_permutation(const std::string& s) {
    std::vector<std::size_t> w;
    for (char c : s) {
        if (c == ' ' || c == ',') continue;
        if (c < '1' || c > '9') throw BadParameter("permutation must be one-line notation in digits 1-9");
        w.push_back(static_cast<std::size_t>(c - '0'));
    }
    auto sorted = w;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        if (sorted[i] != i + 1) throw BadParameter("not a permutation: " + s);
    if (w.empty()) throw BadParameter("empty permutation");
    return w;
}

/// r_w(i, j) = #{k <= i : w(k) <= j}, 1-based.
inline std::size_t schubert_rank(const std::vector<std::size_t>& w, std::size_t i, std::size_t j) {
    std::size_t r = 0;
    for (std::size_t k = 1; k <= i; ++k)
        if (w[k - 1] <= j) ++r;
    return r;
}

/// Fulton's essential set: boxes (i, j) of the diagram at the south-east corner of their component.
inline std::vector<std::pair<std::size_t, std::size_t>> essential_set(const std::vector<std::size_t>& w) {
    const auto n = w.size();
    std::vector<std::size_t> inv(n + 2, 0);
    for (std::size_t i = 1; i <= n; ++i) inv[w[i - 1]] = i;
    auto wv = [&](std::size_t i) { return i >= 1 && i <= n ? w[i - 1] : n + 1; };
    auto iv = [&](std::size_t j) { return j >= 1 && j <= n ? inv[j] : n + 1; };
    std::vector<std::pair<std::size_t, std::size_t>> ess;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) {
            const bool in_diagram = wv(i) > j && iv(j) > i;
            if (!in_diagram) continue;
            const bool south_out = i == n || !(wv(i + 1) > j && iv(j) > i + 1);
            const bool east_out = j == n || !(wv(i) > j + 1 && iv(j + 1) > i);
            if (south_out && east_out) ess.emplace_back(i, j);
        }
    return ess;
}

/// Schubert determinantal ideal: (r_w(i,j)+1)-minors of the north-west i×j submatrix for (i, j) in the essential
/// set. Lex order x_{1n} > ... > x_{11} > x_{2n} > ... (rows top to bottom, columns right to left).
inline Ideal schubert(const std::vector<std::size_t>& w, FieldSpec field = FieldSpec::rationals()) {
    const auto n = w.size();
    std::vector<std::string> names, order;
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = 1; j <= n; ++j) names.push_back(detail::matrix_var(i, j, n, n));
    for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t j = n; j >= 1; --j) order.push_back(detail::matrix_var(i, j, n, n));
    VarContext ctx(names);
    auto R = make_ring(field, ctx, order_from_names(ctx, order));
    auto M = detail::generic_matrix(R, n, n);
    std::vector<Polynomial> gens;
    for (auto [i, j] : essential_set(w))
        for (auto& g : detail::minors_of(M, schubert_rank(w, i, j) + 1, i, j)) gens.push_back(g);
    return Ideal(R, gens);
}

inline Ideal schubert(const std::string& w, FieldSpec field = FieldSpec::rationals()) {
    return schubert(parse_permutation(w), field);
}

}  // namespace gvdkit
