#pragma once

#include <fstream>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gvdkit/parse.hpp"

namespace gvdkit {

inline void PrintTo(const Polynomial& p, std::ostream* os) { *os << p.to_string(); }

}  // namespace gvdkit

namespace gvdtest {

using namespace gvdkit;

inline RingPtr ring(const std::string& names, FieldSpec field = FieldSpec::rationals()) {
    std::istringstream in(names);
    std::vector<std::string> v;
    for (std::string w; in >> w;) v.push_back(w);
    return make_ring(field, VarContext(v));
}

/// Ring whose order lists `greatest_first`.
inline RingPtr ring_ordered(const std::string& names, const std::string& greatest_first) {
    auto r = ring(names);
    std::istringstream in(greatest_first);
    std::vector<std::string> v;
    for (std::string w; in >> w;) v.push_back(w);
    return with_order(r, order_from_names(r->ctx, v));
}

inline Polynomial P(const RingPtr& r, const std::string& s) { return parse_polynomial(r, s); }

inline Ideal I(const RingPtr& r, std::initializer_list<const char*> gens) {
    std::vector<Polynomial> g;
    for (auto s : gens) g.push_back(P(r, s));
    return Ideal(r, g);
}

inline std::string read_data(const std::string& name) {
    std::ifstream in(std::string(GVDKIT_DATA_DIR) + "/" + name);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

/// Random polynomial with small integer coefficients.
inline Polynomial random_poly(std::mt19937_64& rng, const RingPtr& r, int terms, int maxdeg) {
    std::uniform_int_distribution<int> coef(-4, 4), ex(0, maxdeg);
    std::vector<Term> t;
    for (int k = 0; k < terms; ++k) {
        Monomial m(r->nvars());
        for (std::size_t v = 0; v < r->nvars(); ++v) m[v] = static_cast<Monomial::exponent_type>(ex(rng));
        t.push_back({FieldElement::from_int(r->field, coef(rng)), m});
    }
    return Polynomial(r, t);
}

}  // namespace gvdtest
