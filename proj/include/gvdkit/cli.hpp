#pragma once

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "gvdkit/corpus.hpp"
#include "gvdkit/replay.hpp"

namespace gvdkit {

// ---------------------------------------------------------------------------
// complex files: "vertices: a b c", then "facets:" and one facet per line ("{}" is the empty face)

inline SimplicialComplex parse_complex_file(std::string_view text) {
    std::vector<std::string> vertices;
    std::vector<std::vector<std::string>> facets;
    bool have_vertices = false, in_facets = false;
    std::size_t lineno = 0, pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto raw = text.substr(pos, nl - pos);
        pos = nl + 1;
        ++lineno;
        auto hash = raw.find('#');
        if (hash != std::string_view::npos) raw = raw.substr(0, hash);
        auto body = detail::trim(raw);
        if (body.empty()) continue;
        if (!in_facets && body.starts_with("vertices:")) {
            if (have_vertices) throw ParseError("duplicate vertices line", lineno, 1);
            vertices = detail::split_words(body.substr(9));
            have_vertices = true;
        } else if (!in_facets && body.starts_with("facets:")) {
            if (!have_vertices) throw ParseError("facets before vertices line", lineno, 1);
            in_facets = true;
            if (!detail::trim(body.substr(7)).empty()) throw ParseError("facets go one per line", lineno, 8);
        } else if (in_facets) {
            facets.push_back(body == "{}" ? std::vector<std::string>{} : detail::split_words(body));
        } else {
            throw ParseError("expected vertices: or facets:", lineno, 1);
        }
    }
    if (!have_vertices) throw ParseError("missing vertices line", lineno, 1);
    if (!in_facets) throw ParseError("missing facets line", lineno, 1);
    try {
        return SimplicialComplex::from_named(vertices, facets);
    } catch (const UnknownVertex& e) {
        throw ParseError(e.what(), lineno, 1);
    }
}

inline std::string format_complex_file(const SimplicialComplex& d) {
    std::string out = "vertices:";
    for (const auto& v : d.vertices()) out += " " + v;
    out += "\nfacets:\n";
    for (const auto& f : d.facet_names()) {
        if (f.empty()) out += "{}";
        for (std::size_t i = 0; i < f.size(); ++i) out += (i ? " " : "") + f[i];
        out += "\n";
    }
    return out;
}

namespace cli {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw BadParameter("cannot read " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Json ideal_file_json(const IdealFile& f) {
    return {{"field", f.field.to_string()},
            {"ring", f.ring},
            {"order", f.order_or_ring()},
            {"gens", f.gens}};
}

struct Options {
    std::string variant = "full";
    std::string unmixed = "certify";
    std::uint64_t seed = ScalarStrategy{}.seed;
    bool all_orders = false;
    std::string var;
    std::string mode = "pure";
    std::string c_file, n_file, f_expr, g_expr;
    unsigned threads = 0;
};

struct Outcome {
    int code = 0;
    Json certificate;  // null for text outputs
    std::string text;
};

inline ScalarStrategy scalars_of(const Options& o) {
    ScalarStrategy s;
    s.seed = o.seed;
    return s;
}

inline int exit_of(bool certified, bool conditional) { return certified ? (conditional ? 2 : 0) : 1; }

inline std::size_t pick_var(const Ideal& I, const std::string& name) {
    return name.empty() ? I.ring()->order.greatest() : I.ctx().require(name);
}

/// Every ordering of the variables, greatest first, in lexicographic order of index sequences.
inline std::vector<MonomialOrder> all_orders(std::size_t n) {
    if (n > 8) throw BadParameter("--all-lex-orders supports at most 8 variables");
    std::vector<std::size_t> p(n);
    for (std::size_t i = 0; i < n; ++i) p[i] = i;
    std::vector<MonomialOrder> out;
    do {
        out.push_back(MonomialOrder::lex(p));
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

/// Run `job(i)` for i in [0, n) on a small pool; results land by index, so output order is fixed.
template <class F>
void parallel_for(std::size_t n, unsigned threads, F job) {
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex mu;
    auto work = [&] {
        for (;;) {
            auto i = next.fetch_add(1);
            if (i >= n) return;
            try {
                job(i);
            } catch (...) {
                std::lock_guard lock(mu);
                if (!failure) failure = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
    work();
    for (auto& t : pool) t.join();
    if (failure) std::rethrow_exception(failure);
}

inline Json options_json(const Options& o) {
    return {{"variant", o.variant}, {"unmixed", o.unmixed}, {"all_lex_orders", o.all_orders}, {"var", o.var}};
}

inline Json sweep_summary(const std::vector<Json>& results) {
    std::size_t certified = 0, conditional = 0;
    for (const auto& r : results) {
        if (r.at("certified").get<bool>()) ++(r.at("conditional").get<bool>() ? conditional : certified);
    }
    return {{"orders", results.size()},
            {"certified", certified},
            {"conditional", conditional},
            {"refuted", results.size() - certified - conditional},
            {"results", results}};
}

inline int sweep_exit(const Json& summary) {
    if (summary.at("certified").get<std::size_t>() > 0) return 0;
    return summary.at("conditional").get<std::size_t>() > 0 ? 2 : 1;
}

inline Json gvd_for_order(const Ideal& I, const MonomialOrder& ord, const GVDOptions& go) {
    if (go.variant == Variant::OrderCompatible) return cert::order_compatible(is_order_compatible_gvd(I, ord, go.scalars));
    Ideal J(with_order(I.ring(), ord), I.gens());
    auto r = is_gvd(J, go);
    auto j = cert::gvd_result(r);
    j["order"] = cert::order_names(J.ring());
    return j;
}

inline Outcome gvd_check(const IdealFile& f, const Options& o) {
    GVDOptions go;
    go.variant = replay::variant_from(o.variant);
    go.unmixed = replay::mode_from(o.unmixed);
    go.scalars = scalars_of(o);
    const auto& I = f.ideal;
    Json result;
    int code;
    if (o.all_orders) {
        auto orders = all_orders(I.nvars());
        std::vector<Json> results(orders.size());
        parallel_for(orders.size(), o.threads, [&](std::size_t i) { results[i] = gvd_for_order(I, orders[i], go); });
        result = sweep_summary(results);
        code = sweep_exit(result);
    } else {
        result = gvd_for_order(I, I.ring()->order, go);
        code = exit_of(result.at("certified").get<bool>(), result.at("conditional").get<bool>());
    }
    return {code, cert::envelope("gvd check", ideal_file_json(f), options_json(o), o.seed, result, code), ""};
}

inline Json decompose_json(const CNSplit& s) {
    auto j = cert::split(s);
    j["contracted_C"] = cert::polys(s.Cc.gens());
    j["contracted_N"] = cert::polys(s.Nc.gens());
    if (s.squarefree) {
        auto d = classify_degeneracy(s);
        j["degeneracy"] = to_string(d.kind);
        j["degeneracy_rule"] = d.rule;
        j["heights"] = {{"C", d.ht_C}, {"N", d.ht_N}};
    }
    return j;
}

inline Outcome gvd_decompose(const IdealFile& f, const Options& o) {
    const auto y = pick_var(f.ideal, o.var);
    auto s = cn_split(f.ideal, y);
    auto j = decompose_json(s);
    auto v = verify_gvd(s);
    j["decomposition_holds"] = v.holds;
    j["saturation_matches"] = v.saturation_matches;
    j["sum_matches"] = v.sum_matches;
    const int code = s.squarefree && v.holds ? 0 : 1;
    return {code, cert::envelope("gvd decompose", ideal_file_json(f), options_json(o), o.seed, j, code), ""};
}

inline Outcome gb_compute(const IdealFile& f, const Options& o) {
    const auto G = f.ideal.gb();
    Json j{{"order", cert::order_names(f.ideal.ring())}, {"gb", cert::polys(G->elements)}};
    return {0, cert::envelope("gb compute", ideal_file_json(f), options_json(o), o.seed, j, 0), ""};
}

/// C and N bases for the shape of `gens` with respect to y.
inline std::pair<std::vector<Polynomial>, std::vector<Polynomial>> shape_bases(const std::vector<Polynomial>& gens,
                                                                               std::size_t y, const RingPtr& R) {
    std::vector<Polynomial> qh, h;
    for (const auto& g : gens) {
        const auto d = g.degree_in(y);
        qh.push_back(coeff_in(g.in_ring(R), y, d));
        if (d == 0) h.push_back(g.in_ring(R));
    }
    auto N = h.empty() ? std::vector<Polynomial>{} : buchberger_in(h, R).elements;
    return {buchberger_in(qh, R).elements, N};
}

inline Json groebner_failure(const std::string& which) { return {{"holds", false}, {"failed_hypothesis", which}}; }

inline Outcome gb_certify(const IdealFile& f, const Options& o) {
    const auto& I = f.ideal;
    const auto y = pick_var(I, o.var);
    auto ord = I.ring()->order.with_greatest(y);
    auto R = with_order(I.ring(), ord);
    auto [C, N] = shape_bases(I.gens(), y, R);
    Json j;
    int code;
    try {
        auto g = certify_groebner(I.gens(), C, N, y, ord);
        j = cert::groebner(g, C, N);
        j["holds"] = true;
        code = g.n_unmixed.tag == EvidenceTag::Assumed ? 2 : 0;
    } catch (const HypothesisFailed& e) {
        j = groebner_failure(e.which());
        j["y"] = I.ctx().name(y);
        j["C"] = cert::polys(C);
        j["N"] = cert::polys(N);
        code = 1;
    }
    return {code, cert::envelope("gb certify", ideal_file_json(f), options_json(o), o.seed, j, code), ""};
}

inline Outcome glicci_chain_cmd(const IdealFile& f, const Options& o) {
    const auto& I = f.ideal;
    if (!I.gens_homogeneous()) throw NotHomogeneous();
    GVDOptions go;
    go.variant = replay::variant_from(o.variant);
    go.unmixed = replay::mode_from(o.unmixed);
    go.scalars = scalars_of(o);
    auto g = is_gvd(I, go);
    Json j;
    int code;
    if (!g.certified) {
        j = {{"failure", "no-gvd-certificate"}, {"gvd", cert::gvd_result(g)}};
        code = 1;
    } else {
        auto scal = go.scalars;
        auto c = detail::walk_chain(I, g, go.variant, [&](const CNSplit& s, std::size_t) { return build_witness(s, scal); });
        j = cert::chain(c);
        code = exit_of(true, c.conditional);
    }
    return {code, cert::envelope("glicci chain", ideal_file_json(f), options_json(o), o.seed, j, code), ""};
}

inline Outcome glicci_witness(const IdealFile& f, const Options& o) {
    const auto y = pick_var(f.ideal, o.var);
    auto s = cn_split(f.ideal, y);
    auto w = build_witness(s, scalars_of(o));
    Json j{{"split", cert::split(s)}, {"witness", cert::witness(w)}, {"accepted", w.checks.all()}};
    const int code = w.checks.all() ? 0 : 1;
    return {code, cert::envelope("glicci witness", ideal_file_json(f), options_json(o), o.seed, j, code), ""};
}

/// Compares in_y I with C ∩ (N + <y>); when they differ, names one element on one side only.
inline Json given_decomposition(const CNSplit& s, const Ideal& C, const Ideal& N) {
    const auto& R = s.split_ring;
    auto yv = Polynomial::variable(R, s.y);
    Ideal CR(R, C.gens()), NyR = ideal_sum(Ideal(R, N.gens()), {yv});
    for (const auto& g : s.in_y.gens())
        if (!ideal_member(g, CR) || !ideal_member(g, NyR))
            return {{"equal", false}, {"element", g.to_string()}, {"in", "in_y"}, {"not_in", "intersection"}};
    auto rhs = intersect(CR, NyR);
    const auto G = rhs.gb();
    for (const auto& g : G->elements)
        if (!ideal_member(g, s.in_y))
            return {{"equal", false}, {"element", g.to_string()}, {"in", "intersection"}, {"not_in", "in_y"}};
    return {{"equal", true}};
}

inline Outcome from_biliaison(const IdealFile& f, const Options& o) {
    const auto& I = f.ideal;
    if (o.c_file.empty() || o.n_file.empty() || o.f_expr.empty() || o.g_expr.empty())
        throw BadParameter("from-biliaison needs --c, --n, --f and --g");
    auto cf = parse_ideal_file(read_file(o.c_file)), nf = parse_ideal_file(read_file(o.n_file));
    const auto& R = I.ring();
    Ideal C(R, map_context(cf.ideal.gens(), R)), N(R, map_context(nf.ideal.gens(), R));
    auto fp = parse_polynomial(R, o.f_expr), gp = parse_polynomial(R, o.g_expr);
    const auto y = pick_var(I, o.var);
    auto ord = R->order.with_greatest(y);
    Json j{{"y", I.ctx().name(y)}};
    int code;
    try {
        auto s = gvd_from_biliaison(I, C, N, fp, gp, y, ord);
        j["holds"] = true;
        j["split"] = cert::split(s);
        code = 0;
    } catch (const HypothesisFailed& e) {
        j["holds"] = false;
        j["failed_hypothesis"] = e.which();
        Ideal IR(with_order(R, ord), I.gens());
        auto s = cn_split(IR, y);
        j["kmy_split"] = cert::split(s);
        j["given_decomposition"] = given_decomposition(s, C, N);
        code = 1;
    }
    Json inputs = ideal_file_json(f);
    inputs["C"] = cert::polys(C.gens());
    inputs["N"] = cert::polys(N.gens());
    inputs["f"] = fp.to_string();
    inputs["g"] = gp.to_string();
    return {code, cert::envelope("glicci from-biliaison", inputs, options_json(o), o.seed, j, code), ""};
}

inline VDMode vd_mode_of(const std::string& m) { return replay::vd_mode_from(m); }

inline Outcome vd_check(const SimplicialComplex& d, const Options& o) {
    auto mode = vd_mode_of(o.mode);
    std::vector<std::size_t> order;
    for (std::size_t i = 0; i < d.nverts(); ++i) order.push_back(i);
    auto r = vertex_decomposable(d, mode, order);
    const int code = r.decomposable ? 0 : 1;
    auto opts = options_json(o);
    opts["mode"] = o.mode;
    return {code, cert::envelope("complex vd-check", cert::complex_json(d), opts, o.seed, cert::vd_result(r), code), ""};
}

inline Outcome corpus_cmd(const std::vector<std::string>& args) {
    if (args.empty()) throw BadParameter("corpus needs a kind: minors, hankel, schubert, stanley-reisner");
    auto num = [&](std::size_t i) -> std::size_t {
        if (i >= args.size()) throw BadParameter("corpus " + args[0] + ": missing parameter");
        try {
            return std::stoul(args[i]);
        } catch (const std::exception&) {
            throw BadParameter("not a number: " + args[i]);
        }
    };
    const auto& k = args[0];
    Ideal I;
    if (k == "minors") I = minors(num(1), num(2), num(3));
    else if (k == "hankel") I = hankel(num(1));
    else if (k == "schubert") {
        if (args.size() < 2) throw BadParameter("corpus schubert needs a permutation");
        I = schubert(args[1]);
    } else if (k == "stanley-reisner") {
        if (args.size() < 2) throw BadParameter("corpus stanley-reisner needs a complex file");
        I = stanley_reisner(parse_complex_file(read_file(args[1])));
    } else {
        throw BadParameter("unknown corpus kind " + k);
    }
    Outcome out;
    out.text = format_ideal_file(I);
    return out;
}

// ---------------------------------------------------------------------------
// replay

struct ReplayOutcome {
    Json rebuilt;  // result rebuilt from verified computations
    int code = 0;
    std::size_t checks = 0;
};

inline void same_result(replay::Session& s, const Json& rebuilt, const Json& recorded) {
    replay::expect_same(s, rebuilt, recorded, "result");
}

inline Json replay_oc(replay::Session& s, const Ideal& I, const MonomialOrder& ord, const Json& rec) {
    Ideal J(with_order(I.ring(), ord), I.gens());
    OrderCompatibleResult out;
    for (auto v : ord.ranking()) out.order.push_back(J.ctx().name(v));
    replay::GVDReplayer gr(s, Variant::OrderCompatible, UnmixedMode::Certify);
    out.recursion = replay::replay_gvd(s, J, rec.at("recursion"), gr);
    out.recursion.options.variant = Variant::OrderCompatible;
    const auto G = J.gb();
    out.initial_squarefree = all_squarefree_leads(G->elements);
    for (const auto& p : G->elements) out.initial_ideal.push_back(detail::lead_monomial_of(p));
    if (out.initial_squarefree) {
        auto delta = complex_of(Ideal(J.ring(), out.initial_ideal));
        out.complex_vd = replay::replay_vd(s, delta, rec.at("complex_vd"));
        s.expect(out.complex_vd->mode == VDMode::OrderCompatible && out.complex_vd->order == ord.ranking(),
                 "initial complex checked compatibly with the order");
        out.strategy_b = out.complex_vd->decomposable;
    }
    const bool a_sure = out.recursion.certified && !out.recursion.conditional;
    s.expect(!((a_sure && !out.strategy_b) || (out.strategy_b && !out.recursion.certified)), "strategies agree");
    out.certified = out.strategy_b && out.recursion.certified;
    out.conditional = out.certified && out.recursion.conditional;
    return cert::order_compatible(out, &rec);
}

inline Json replay_gvd_for_order(replay::Session& s, const Ideal& I, const MonomialOrder& ord, const Json& rec,
                                 Variant v, UnmixedMode m) {
    if (v == Variant::OrderCompatible) return replay_oc(s, I, ord, rec);
    Ideal J(with_order(I.ring(), ord), I.gens());
    replay::GVDReplayer gr(s, v, m);
    auto r = replay::replay_gvd(s, J, rec, gr);
    s.expect(r.options.variant == v && r.options.unmixed == m, "recorded options");
    auto j = cert::gvd_result(r, &rec);
    j["order"] = cert::order_names(J.ring());
    return j;
}

inline ReplayOutcome replay_gvd_check(const Json& c, unsigned threads) {
    auto I = replay::ideal_from(c.at("inputs"));
    const auto& opt = c.at("options");
    auto v = replay::variant_from(opt.at("variant").get<std::string>());
    auto m = replay::mode_from(opt.at("unmixed").get<std::string>());
    const auto& rec = c.at("result");
    ReplayOutcome out;
    if (opt.at("all_lex_orders").get<bool>()) {
        auto orders = all_orders(I.nvars());
        const auto& rs = rec.at("results");
        if (rs.size() != orders.size()) throw ReplayMismatch("number of orders");
        std::vector<Json> results(orders.size());
        std::vector<std::size_t> checks(orders.size());
        parallel_for(orders.size(), threads, [&](std::size_t i) {
            replay::Session s;
            results[i] = replay_gvd_for_order(s, I, orders[i], rs[i], v, m);
            checks[i] = s.checks;
        });
        for (auto k : checks) out.checks += k;
        out.rebuilt = sweep_summary(results);
        out.code = sweep_exit(out.rebuilt);
    } else {
        replay::Session s;
        out.rebuilt = replay_gvd_for_order(s, I, I.ring()->order, rec, v, m);
        out.checks = s.checks;
        out.code = exit_of(out.rebuilt.at("certified").get<bool>(), out.rebuilt.at("conditional").get<bool>());
    }
    return out;
}

inline ReplayOutcome replay_decompose(const Json& c) {
    replay::Session s;
    auto I = replay::ideal_from(c.at("inputs"));
    const auto& rec = c.at("result");
    const auto y = I.ctx().require(rec.at("y").get<std::string>());
    auto sp = split_from_gb(I, y, replay::verified_split_gb(s, I, y, rec.at("split_gb")));
    auto j = decompose_json(sp);
    if (sp.squarefree) {
        // squarefree in y: the decomposition, the saturation and the sum all follow from the identity
        replay::check_decomposition_identity(s, sp);
        j["decomposition_holds"] = j["saturation_matches"] = j["sum_matches"] = true;
    } else {
        auto v = verify_gvd(sp);
        j["decomposition_holds"] = v.holds;
        j["saturation_matches"] = v.saturation_matches;
        j["sum_matches"] = v.sum_matches;
    }
    const int code = sp.squarefree && j["decomposition_holds"].get<bool>() ? 0 : 1;
    return {j, code, s.checks};
}

inline ReplayOutcome replay_gb_compute(const Json& c) {
    replay::Session s;
    auto I = replay::ideal_from(c.at("inputs"));
    Json j{{"order", cert::order_names(I.ring())}, {"gb", cert::polys(I.gb()->elements)}};
    s.expect(is_reduced_groebner_basis(I.gb()->elements, I.ring()), "reduced GB");
    return {j, 0, s.checks};
}

inline ReplayOutcome replay_gb_certify(const Json& c) {
    replay::Session s;
    auto I = replay::ideal_from(c.at("inputs"));
    const auto& rec = c.at("result");
    const auto y = I.ctx().require(rec.at("y").get<std::string>());
    auto ord = I.ring()->order.with_greatest(y);
    auto R = with_order(I.ring(), ord);
    auto C = replay::polys_from(rec.at("C"), R), N = replay::polys_from(rec.at("N"), R);
    Json j;
    int code;
    try {
        replay::GVDReplayer gr(s, Variant::Full, UnmixedMode::Certify);
        auto claim = [&](const Ideal& Nd, Evidence& ev, std::optional<VDResult>& vd) -> std::optional<bool> {
            if (!rec.contains("n_unmixed")) {
                // a failure record; later hypotheses do not depend on unmixedness, and only monomial N is
                // ever refuted exactly
                if (rec.at("failed_hypothesis") != "N-unmixed") return std::nullopt;
                s.expect(detail::all_monomial(Nd.gb()->elements), "mixed N is monomial");
                return monomial_unmixed(Nd);
            }
            ev = replay::evidence_from(rec.at("n_unmixed")).value();
            if (ev.tag == EvidenceTag::Assumed) {
                s.expect(ev.rule == "no-certificate", "missing evidence is Assumed");
                return std::nullopt;
            }
            gr.unmixed_claim(Nd, ev, rec.at("n_vd"), vd);
            return true;
        };
        auto g = certify_groebner(I.gens(), C, N, y, ord, false, claim);
        j = cert::groebner(g, C, N, &rec);
        j["holds"] = true;
        code = g.n_unmixed.tag == EvidenceTag::Assumed ? 2 : 0;
        s.checks += g.verified.size();
    } catch (const HypothesisFailed& e) {
        // the recorded C and N were computed by Buchberger; re-derive them before trusting the failure
        auto [C2, N2] = shape_bases(I.gens(), y, R);
        s.expect(cert::polys(C2) == rec.at("C") && cert::polys(N2) == rec.at("N"), "C and N bases");
        j = groebner_failure(e.which());
        j["y"] = I.ctx().name(y);
        j["C"] = cert::polys(C);
        j["N"] = cert::polys(N);
        code = 1;
    }
    return {j, code, s.checks};
}

inline ReplayOutcome replay_chain(const Json& c) {
    replay::Session s;
    auto I = replay::ideal_from(c.at("inputs"));
    const auto& rec = c.at("result");
    ReplayOutcome out;
    const auto& gv = rec.at("gvd");
    auto v = replay::variant_from(gv.at("variant").get<std::string>());
    auto m = replay::mode_from(gv.at("unmixed_mode").get<std::string>());
    replay::GVDReplayer gr(s, v, m);
    auto g = replay::replay_gvd(s, I, gv, gr);
    if (rec.contains("failure")) {
        s.expect(!g.certified, "no GVD certificate");
        out.rebuilt = {{"failure", "no-gvd-certificate"}, {"gvd", cert::gvd_result(g, &gv)}};
        out.code = 1;
    } else {
        s.expect(I.gens_homogeneous(), "homogeneous input");
        const auto& steps = rec.at("steps");
        auto chain = detail::walk_chain(I, g, v, [&](const CNSplit& sp, std::size_t i) {
            if (i >= steps.size() || steps[i].at("witness").is_null()) throw ReplayMismatch("no recorded witness");
            const auto& wr = steps[i].at("witness");
            auto w = replay_witness(sp, replay::scalars_from(wr.at("scalars"), sp.split_ring->field));
            w.strategy = wr.at("strategy").get<std::string>();
            w.seed = wr.at("seed").get<std::uint64_t>();
            w.attempts = wr.at("attempts").get<std::size_t>();
            s.expect(detail::witness_accepted(w.checks), "chain witness checks");
            return w;
        });
        out.rebuilt = cert::chain(chain, &rec);
        out.code = exit_of(true, chain.conditional);
    }
    out.checks = s.checks;
    return out;
}

inline ReplayOutcome replay_witness_cmd(const Json& c) {
    replay::Session s;
    auto I = replay::ideal_from(c.at("inputs"));
    const auto& rec = c.at("result");
    const auto& sr = rec.at("split");
    const auto y = I.ctx().require(sr.at("y").get<std::string>());
    auto sp = split_from_gb(I, y, replay::verified_split_gb(s, I, y, sr.at("split_gb")));
    const auto& wr = rec.at("witness");
    auto w = replay_witness(sp, replay::scalars_from(wr.at("scalars"), I.ring()->field));
    w.strategy = wr.at("strategy").get<std::string>();
    w.seed = wr.at("seed").get<std::uint64_t>();
    w.attempts = wr.at("attempts").get<std::size_t>();
    Json j{{"split", cert::split(sp)}, {"witness", cert::witness(w)}, {"accepted", w.checks.all()}};
    return {j, w.checks.all() ? 0 : 1, s.checks};
}

inline ReplayOutcome replay_from_biliaison(const Json& c) {
    replay::Session s;
    const auto& in = c.at("inputs");
    auto I = replay::ideal_from(in);
    const auto& R = I.ring();
    Ideal C(R, replay::polys_from(in.at("C"), R)), N(R, replay::polys_from(in.at("N"), R));
    auto fp = parse_polynomial(R, in.at("f").get<std::string>()), gp = parse_polynomial(R, in.at("g").get<std::string>());
    const auto& rec = c.at("result");
    const auto y = I.ctx().require(rec.at("y").get<std::string>());
    auto ord = R->order.with_greatest(y);
    Json j{{"y", I.ctx().name(y)}};
    int code;
    try {
        auto sp = gvd_from_biliaison(I, C, N, fp, gp, y, ord);
        j["holds"] = true;
        j["split"] = cert::split(sp);
        code = 0;
    } catch (const HypothesisFailed& e) {
        j["holds"] = false;
        j["failed_hypothesis"] = e.which();
        Ideal IR(with_order(R, ord), I.gens());
        auto sp = split_from_gb(IR, y, IR.gb());
        j["kmy_split"] = cert::split(sp);
        const auto& gd = rec.at("given_decomposition");
        if (gd.at("equal").get<bool>()) {
            j["given_decomposition"] = given_decomposition(sp, C, N);
        } else {
            // one recorded element on one side only; no intersection needed
            const auto& S = sp.split_ring;
            auto e = parse_polynomial(S, gd.at("element").get<std::string>());
            auto yv = Polynomial::variable(S, y);
            Ideal CS(S, C.gens()), NyS = ideal_sum(Ideal(S, N.gens()), {yv});
            const bool in_rhs = ideal_member(e, CS) && ideal_member(e, NyS);
            const bool in_lhs = ideal_member(e, sp.in_y);
            const auto side = gd.at("in").get<std::string>();
            s.expect(side == "in_y" ? (in_lhs && !in_rhs) : (in_rhs && !in_lhs), "separating element");
            j["given_decomposition"] = gd;
        }
        code = 1;
    }
    return {j, code, s.checks};
}

inline ReplayOutcome replay_vd_check(const Json& c) {
    replay::Session s;
    const auto& in = c.at("inputs");
    auto d = SimplicialComplex::from_named(in.at("vertices").get<std::vector<std::string>>(),
                                           in.at("facets").get<std::vector<std::vector<std::string>>>());
    auto r = replay::replay_vd(s, d, c.at("result"));
    s.expect(to_string(r.mode) == c.at("options").at("mode").get<std::string>(), "recorded mode");
    return {cert::vd_result(r, &c.at("result")), r.decomposable ? 0 : 1, s.checks};
}

/// Re-verify a certificate. Exit 0 when every recorded fact is reproduced without search, 1 otherwise.
inline Outcome replay_certificate(const Json& c, unsigned threads) {
    if (!c.is_object() || c.value("schema_version", 0) != kSchemaVersion) throw BadParameter("not a certificate");
    const auto cmd = c.at("command").get<std::string>();
    const auto before = detail::search_counter().load();
    Json report{{"schema_version", kSchemaVersion}, {"command", "replay"}, {"replayed", cmd}};
    try {
        ReplayOutcome r;
        if (cmd == "gvd check") r = replay_gvd_check(c, threads);
        else if (cmd == "gvd decompose") r = replay_decompose(c);
        else if (cmd == "gb compute") r = replay_gb_compute(c);
        else if (cmd == "gb certify") r = replay_gb_certify(c);
        else if (cmd == "glicci chain") r = replay_chain(c);
        else if (cmd == "glicci witness") r = replay_witness_cmd(c);
        else if (cmd == "glicci from-biliaison") r = replay_from_biliaison(c);
        else if (cmd == "complex vd-check") r = replay_vd_check(c);
        else throw BadParameter("cannot replay command " + cmd);
        replay::Session s;
        same_result(s, r.rebuilt, c.at("result"));
        s.expect(r.code == c.at("exit_code").get<int>(), "exit code");
        const auto steps = detail::search_counter().load() - before;
        s.expect(steps == 0, "replay made " + std::to_string(steps) + " search steps");
        report["verified"] = true;
        report["checks"] = r.checks + s.checks;
        report["search_steps"] = 0;
        report["exit_code"] = r.code;
        return {0, report, ""};
    } catch (const ReplayMismatch& e) {
        report["verified"] = false;
        report["error"] = e.what();
    } catch (const HypothesisFailed& e) {
        report["verified"] = false;
        report["error"] = e.what();
    } catch (const Json::exception& e) {
        report["verified"] = false;
        report["error"] = std::string("malformed certificate: ") + e.what();
        return {3, report, ""};
    }
    return {1, report, ""};
}

// ---------------------------------------------------------------------------
// dispatch

/// One line for stderr when the certificate went to a file.
inline std::string status_line(const Json& c) {
    return c.at("command").get<std::string>() + ": " + c.value("status", std::string("?"));
}

/// Bad input is a usage error (3); anything else means the property failed (1).
inline int error_code(const std::exception& e) {
    if (dynamic_cast<const ParseError*>(&e) || dynamic_cast<const BadParameter*>(&e) ||
        dynamic_cast<const UnknownVertex*>(&e) || dynamic_cast<const NotMonomial*>(&e) ||
        dynamic_cast<const NotSquarefree*>(&e) || dynamic_cast<const VariableEscape*>(&e) ||
        dynamic_cast<const Json::exception*>(&e))
        return 3;
    return 1;
}

}  // namespace cli

/// Run one command line (without the program name). Certificates go to `out` (or --json-out), text outputs
/// to `out`, diagnostics to `err`.
inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"gvdkit: geometric vertex decomposition, liaison and Stanley-Reisner tools", "gvdkit"};
    app.fallthrough();
    cli::Options o;
    std::string replay_path, json_out;
    app.add_option("--variant", o.variant, "full | weak | order-compatible | nonpure")
        ->check(CLI::IsMember({"full", "weak", "order-compatible", "nonpure"}));
    app.add_option("--unmixed", o.unmixed, "assume | monomial | certify")->check(CLI::IsMember({"assume", "monomial", "certify"}));
    app.add_option("--seed", o.seed, "seed for random witness scalars");
    app.add_option("--replay", replay_path, "re-verify a certificate without searching");
    app.add_flag("--all-lex-orders", o.all_orders, "sweep every lex order (at most 8 variables)");
    app.add_option("--json-out", json_out, "write the certificate here instead of standard output");
    app.add_option("--threads", o.threads, "worker threads for sweeps (default: all cores)");
    app.require_subcommand(0, 1);

    std::string file;
    std::vector<std::string> corpus_args;
    auto* gvd = app.add_subcommand("gvd", "geometric vertex decomposition")->require_subcommand(1);
    auto* gvd_check = gvd->add_subcommand("check", "decide GVD and emit a certificate");
    gvd_check->add_option("file", file, "ideal file")->required();
    auto* gvd_dec = gvd->add_subcommand("decompose", "one split with respect to a variable");
    gvd_dec->add_option("file", file, "ideal file")->required();
    gvd_dec->add_option("--var", o.var, "variable y (default: greatest)");

    auto* gb = app.add_subcommand("gb", "Groebner bases")->require_subcommand(1);
    auto* gb_comp = gb->add_subcommand("compute", "reduced Groebner basis");
    gb_comp->add_option("file", file, "ideal file")->required();
    auto* gb_cert = gb->add_subcommand("certify", "certify the generators as a Groebner basis by the 2-minor test");
    gb_cert->add_option("file", file, "ideal file")->required();
    gb_cert->add_option("--var", o.var, "variable y (default: greatest)");

    auto* gl = app.add_subcommand("glicci", "G-biliaison")->require_subcommand(1);
    auto* gl_chain = gl->add_subcommand("chain", "glicci chain from a GVD certificate");
    gl_chain->add_option("file", file, "ideal file")->required();
    auto* gl_wit = gl->add_subcommand("witness", "elementary G-biliaison witness for one split");
    gl_wit->add_option("file", file, "ideal file")->required();
    gl_wit->add_option("--var", o.var, "variable y (default: greatest)");
    auto* gl_from = gl->add_subcommand("from-biliaison", "recover a geometric vertex decomposition from a biliaison");
    gl_from->add_option("file", file, "ideal file for I")->required();
    gl_from->add_option("--c", o.c_file, "ideal file for C")->required();
    gl_from->add_option("--n", o.n_file, "ideal file for N")->required();
    gl_from->add_option("--f", o.f_expr, "f")->required();
    gl_from->add_option("--g", o.g_expr, "g")->required();
    gl_from->add_option("--var", o.var, "variable y (default: greatest)");

    auto* sr = app.add_subcommand("sr", "Stanley-Reisner conversions")->require_subcommand(1);
    auto* sr_ideal = sr->add_subcommand("to-ideal", "complex file to its Stanley-Reisner ideal");
    sr_ideal->add_option("file", file, "complex file")->required();
    auto* sr_cx = sr->add_subcommand("to-complex", "squarefree monomial ideal to its complex");
    sr_cx->add_option("file", file, "ideal file")->required();

    auto* cx = app.add_subcommand("complex", "simplicial complexes")->require_subcommand(1);
    auto* cx_vd = cx->add_subcommand("vd-check", "vertex decomposability");
    cx_vd->add_option("file", file, "complex file")->required();
    cx_vd->add_option("--mode", o.mode, "pure | nonpure")->check(CLI::IsMember({"pure", "nonpure"}));

    auto* corpus = app.add_subcommand("corpus", "generate an ideal file: minors R M N | hankel D | schubert PERM | stanley-reisner FILE");
    corpus->add_option("args", corpus_args, "kind and parameters")->required();

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return 0;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return 0;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << "\n";
        return 3;
    }

    cli::Outcome res;
    try {
        if (!replay_path.empty()) {
            Json c;
            try {
                c = Json::parse(cli::read_file(replay_path));
            } catch (const Json::parse_error& e) {
                err << "error: certificate is not JSON: " << e.what() << "\n";
                return 3;
            }
            res = cli::replay_certificate(c, o.threads);
        } else if (gvd_check->parsed()) {
            res = cli::gvd_check(parse_ideal_file(cli::read_file(file)), o);
        } else if (gvd_dec->parsed()) {
            res = cli::gvd_decompose(parse_ideal_file(cli::read_file(file)), o);
        } else if (gb_comp->parsed()) {
            res = cli::gb_compute(parse_ideal_file(cli::read_file(file)), o);
        } else if (gb_cert->parsed()) {
            res = cli::gb_certify(parse_ideal_file(cli::read_file(file)), o);
        } else if (gl_chain->parsed()) {
            res = cli::glicci_chain_cmd(parse_ideal_file(cli::read_file(file)), o);
        } else if (gl_wit->parsed()) {
            res = cli::glicci_witness(parse_ideal_file(cli::read_file(file)), o);
        } else if (gl_from->parsed()) {
            res = cli::from_biliaison(parse_ideal_file(cli::read_file(file)), o);
        } else if (sr_ideal->parsed()) {
            res.text = format_ideal_file(stanley_reisner(parse_complex_file(cli::read_file(file))));
        } else if (sr_cx->parsed()) {
            res.text = format_complex_file(complex_of(parse_ideal_file(cli::read_file(file)).ideal));
        } else if (cx_vd->parsed()) {
            res = cli::vd_check(parse_complex_file(cli::read_file(file)), o);
        } else if (corpus->parsed()) {
            res = cli::corpus_cmd(corpus_args);
        } else {
            err << app.help();
            return 3;
        }
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return cli::error_code(e);
    }
    if (!res.certificate.is_null()) {
        const auto doc = res.certificate.dump(2) + "\n";
        if (json_out.empty()) {
            out << doc;
        } else {
            std::ofstream f(json_out, std::ios::binary);
            if (!f) {
                err << "error: cannot write " << json_out << "\n";
                return 3;
            }
            f << doc;
            err << cli::status_line(res.certificate) << "\n";
        }
    }
    if (!res.text.empty()) out << res.text;
    return res.code;
}

}  // namespace gvdkit
