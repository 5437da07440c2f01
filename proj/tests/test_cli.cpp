#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include "gvdkit/cli.hpp"
#include "support.hpp"

using namespace gvdtest;

namespace {

std::string data(const std::string& name) { return std::string(GVDKIT_DATA_DIR) + "/" + name; }

struct Run {
    int code;
    std::string out, err;
};

Run run(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = run_command(args, out, err);
    return {code, out.str(), err.str()};
}

std::string temp_file(const std::string& name, const std::string& text) {
    auto p = std::filesystem::temp_directory_path() / ("gvdkit-test-" + name);
    std::ofstream(p) << text;
    return p.string();
}

Json certificate(const std::vector<std::string>& args) {
    auto r = run(args);
    return Json::parse(r.out);
}

int replay_file(const Json& c, Json* report = nullptr) {
    auto path = temp_file("replay.json", c.dump());
    auto r = run({"--replay", path});
    if (report) *report = Json::parse(r.out);
    return r.code;
}

// Every path in `j` that holds a string, boolean or number.
void leaves(const Json& j, const Json::json_pointer& at, std::vector<Json::json_pointer>& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) leaves(v, at / k, out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) leaves(j[i], at / i, out);
    } else if (!j.is_null()) {
        out.push_back(at);
    }
}

}  // namespace

TEST(Cli, GvdCheckCertifies) {
    auto r = run({"gvd", "check", data("ex-nolex.ideal")});
    EXPECT_EQ(r.code, 0) << r.err;
    auto c = Json::parse(r.out);
    EXPECT_EQ(c.at("status"), "certified");
    EXPECT_EQ(c.at("command"), "gvd check");
}

TEST(Cli, OrderCompatibleSweepRefutes) {
    auto r = run({"--variant", "order-compatible", "--all-lex-orders", "gvd", "check", data("ex-nolex.ideal")});
    EXPECT_EQ(r.code, 1) << r.err;
    auto s = Json::parse(r.out).at("result");
    EXPECT_EQ(s.at("orders"), 720);
    EXPECT_EQ(s.at("refuted"), 720);
}

TEST(Cli, ChainForMinors) {
    auto r = run({"glicci", "chain", data("minors-2x3.ideal")});
    ASSERT_EQ(r.code, 0) << r.err;
    EXPECT_EQ(Json::parse(r.out).at("result").at("length"), 1);
}

TEST(Cli, ReplayVerifiesEachCommand) {
    const std::vector<std::vector<std::string>> cmds = {
        {"gvd", "check", data("ex-nolex.ideal")},
        {"--variant", "weak", "gvd", "check", data("ex-weak.ideal")},
        {"gvd", "decompose", data("iprime.ideal")},
        {"gb", "compute", data("hankel-3.ideal")},
        {"gb", "certify", data("hankel-3.ideal")},
        {"glicci", "chain", data("minors-2x3.ideal")},
        {"glicci", "witness", data("minors-2x3.ideal")},
        {"complex", "vd-check", "--mode", "nonpure", data("path-nonpure.complex")},
    };
    for (const auto& cmd : cmds) {
        auto r = run(cmd);
        auto c = Json::parse(r.out);
        Json report;
        EXPECT_EQ(replay_file(c, &report), 0) << cmd[cmd.size() - 2] << ": " << report.dump();
        EXPECT_EQ(report.at("search_steps"), 0);
        EXPECT_EQ(report.at("exit_code"), r.code);
    }
}

TEST(Cli, ParseErrorExitsThree) {
    auto bad = temp_file("bad.ideal", "ring: x y\ngens: x*+y\n");
    EXPECT_EQ(run({"gvd", "check", bad}).code, 3);
    EXPECT_EQ(run({"gvd", "check", data("missing.ideal")}).code, 3);
    EXPECT_EQ(run({"--variant", "sideways", "gvd", "check", data("ex-nolex.ideal")}).code, 3);
    EXPECT_EQ(run({"--replay", bad}).code, 3);
}

TEST(Cli, TamperedCertificateFails) {
    auto c = certificate({"gvd", "check", data("ex-nolex.ideal")});
    auto& gb = c["result"]["root"]["gb"];
    ASSERT_FALSE(gb.empty());
    gb[0] = gb[0].get<std::string>() + " + 1";
    Json report;
    EXPECT_EQ(replay_file(c, &report), 1);
    EXPECT_FALSE(report.at("verified").get<bool>());

    auto m = certificate({"gvd", "check", data("ex-nolex.ideal")});
    m["result"].erase("root");
    EXPECT_EQ(replay_file(m), 3);
}

// Any single-leaf change to a recorded result must be caught by replay.
TEST(Cli, ReplayCatchesRandomTampering) {
    const std::vector<std::vector<std::string>> cmds = {
        {"--variant", "weak", "gvd", "check", data("ex-weak.ideal")},
        {"gvd", "check", data("ex-weak.ideal")},
        {"gvd", "decompose", data("iprime.ideal")},
        {"complex", "vd-check", data("two-edges.complex")},
        {"complex", "vd-check", "--mode", "nonpure", data("bowtie.complex")},
    };
    std::mt19937_64 rng(7);
    for (const auto& cmd : cmds) {
        auto c = certificate(cmd);
        ASSERT_EQ(replay_file(c), 0);
        std::vector<Json::json_pointer> paths;
        leaves(c.at("result"), Json::json_pointer("/result"), paths);
        ASSERT_FALSE(paths.empty());
        for (int k = 0; k < 30; ++k) {
            auto t = c;
            const auto& p = paths[rng() % paths.size()];
            auto& v = t[p];
            if (v.is_string()) v = v.get<std::string>() + "x";
            else if (v.is_boolean()) v = !v.get<bool>();
            else v = v.get<double>() + 1;
            EXPECT_NE(replay_file(t), 0) << p.to_string();
        }
    }
}

TEST(Cli, NodeMatcherAgreesWithSerialization) {
    for (auto name : {"ex-nolex.ideal", "ex-weak.ideal", "iprime.ideal", "squarefree-path.ideal", "hankel-3.ideal"}) {
        auto f = parse_ideal_file(read_data(name));
        for (auto v : {Variant::Full, Variant::Weak, Variant::Nonpure}) {
            if (v == Variant::Nonpure && !detail::all_monomial(f.ideal.gb()->elements)) continue;  // monomial input only
            GVDOptions go;
            go.variant = v;
            auto r = is_gvd(f.ideal, go);
            auto j = cert::node(*r.root);
            EXPECT_TRUE(cert::node_matches(*r.root, j)) << name;
            std::vector<Json::json_pointer> paths;
            leaves(j, Json::json_pointer(), paths);
            std::mt19937_64 rng(paths.size());
            for (int k = 0; k < 20 && !paths.empty(); ++k) {
                auto t = j;
                auto& x = t[paths[rng() % paths.size()]];
                if (x.is_string()) x = x.get<std::string>() + "x";
                else if (x.is_boolean()) x = !x.get<bool>();
                else x = 1000;
                EXPECT_FALSE(cert::node_matches(*r.root, t)) << name;
            }
            auto extra = j;
            extra["unexpected"] = 1;
            EXPECT_FALSE(cert::node_matches(*r.root, extra)) << name;
        }
    }
}

TEST(Cli, StanleyReisnerRoundTrip) {
    auto cx = read_data("bowtie.complex");
    auto r = run({"sr", "to-ideal", data("bowtie.complex")});
    ASSERT_EQ(r.code, 0) << r.err;
    auto ideal = temp_file("bowtie.ideal", r.out);
    auto back = run({"sr", "to-complex", ideal});
    ASSERT_EQ(back.code, 0) << back.err;
    auto d1 = parse_complex_file(cx), d2 = parse_complex_file(back.out);
    EXPECT_EQ(d1.vertices(), d2.vertices());
    EXPECT_EQ(d1.facet_names(), d2.facet_names());
}

TEST(Cli, ComplexFileFormatRoundTrip) {
    for (auto name : {"bowtie.complex", "two-edges.complex", "path-nonpure.complex"}) {
        auto d = parse_complex_file(read_data(name));
        auto e = parse_complex_file(format_complex_file(d));
        EXPECT_EQ(d.vertices(), e.vertices()) << name;
        EXPECT_EQ(d.facet_names(), e.facet_names()) << name;
    }
    auto empty = parse_complex_file("vertices: a b\nfacets:\n{}\n");
    EXPECT_EQ(empty.facet_names().size(), 1u);
    EXPECT_THROW(parse_complex_file("vertices: a\nfacets:\na z\n"), Error);
}

TEST(Cli, VdCheckModes) {
    EXPECT_EQ(run({"complex", "vd-check", data("two-edges.complex")}).code, 1);
    EXPECT_EQ(run({"complex", "vd-check", "--mode", "nonpure", data("path-nonpure.complex")}).code, 0);
}

TEST(Cli, JsonOutWritesFile) {
    auto path = (std::filesystem::temp_directory_path() / "gvdkit-test-out.json").string();
    std::remove(path.c_str());
    auto r = run({"--json-out", path, "gvd", "check", data("ex-nolex.ideal")});
    EXPECT_EQ(r.code, 0);
    EXPECT_TRUE(r.out.empty());
    EXPECT_NE(r.err.find("certified"), std::string::npos);
    EXPECT_EQ(Json::parse(cli::read_file(path)).at("exit_code"), 0);
}
