#include <json.hpp>
#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "ek/engel.hpp"

using json = nlohmann::json;
using ek::sym::Expr;
using ek::sym::parse;

namespace {
struct Run {
    int code;
    std::string out, err;
};
Run run(std::vector<std::string> args) {
    std::ostringstream o, e;
    int c = ek::cli::run(args, o, e);
    return {c, o.str(), e.str()};
}
json run_json(std::vector<std::string> args, int expect = 0) {
    args.push_back("--format");
    args.push_back("json");
    auto r = run(args);
    CHECK(r.code == expect);
    return json::parse(r.out);
}
}  // namespace

TEST_CASE("documented examples") {
    auto j = run_json({"invariants", "--t", "0"});
    CHECK(j["results"]["classification"]["branch"] == "flat");
    CHECK(j["results"]["classification"]["max_symmetry"] == 9);
    for (auto& [k, v] : j["results"]["invariants"].items()) CHECK(v == "0");
    CHECK(j["status"] == "ok");

    auto k = run_json({"kerr", "verify", "--F", "t - (2*y3 - y1)/y2", "--t", "(x1 - 2*x3)/(-x2 + 2*x4)"});
    CHECK(k["status"] == "ok");

    auto g = run({"g2", "verify"});
    CHECK(g.code == 0);
    CHECK(g.out.find("14/14") != std::string::npos);
    CHECK(g.out.find("364/364") != std::string::npos);
}

TEST_CASE("exit codes") {
    CHECK(run({"kerr", "verify", "--F", "t", "--t", "x4"}).code == 1);
    CHECK(run({"reduction", "verify-flat", "--printed-u3"}).code == 1);
    auto bad = run({"invariants", "--t", "x1 +* 2"});
    CHECK(bad.code == 2);
    CHECK(bad.err.find("position") != std::string::npos);
    CHECK(run({"nonsense"}).code == 2);
    CHECK(run({}).code == 2);
    CHECK(run({"invariants"}).code == 2);
    CHECK(run({"invariants", "--t", "x5"}).code == 2);
    CHECK(run({"kerr", "section", "--H", "y1", "--at", "x1=1"}).code == 2);
    CHECK(run({"classify", "--t", "x3", "--at", "zz=1"}).code == 2);
    CHECK(run({"tanaka", "prolong", "--g0", "sl5"}).code == 2);
    CHECK(run({"--help"}).code == 0);
}

TEST_CASE("printed expressions re-parse") {
    for (std::string t : {"(x1 - s*x3)/(-x2 + s*x4)", "x0*x1 + 2*x2^2 - x3*x4 + x1", "x4^3 - 1/3*x0"}) {
        auto j = run_json({"invariants", "--t", t});
        auto inv = ek::engel::invariants_closed_form(parse(t));
        for (std::size_t i = 0; i < 10; ++i) {
            const char* n = ek::engel::InvariantJet::names()[i];
            INFO(t << " " << n);
            CHECK(parse(j["results"]["invariants"][n].get<std::string>()) == inv.field(i));
        }
        CHECK(parse(j["results"]["t"].get<std::string>()) == parse(t));
    }
    auto r = run_json({"reduction", "verify-flat"});
    for (auto& [k, v] : r["results"]["values"].items()) CHECK(parse(v.get<std::string>()).str() == v.get<std::string>());
}

TEST_CASE("output is deterministic") {
    auto a = run({"invariants", "--seed", "11"});
    auto b = run({"invariants", "--seed", "11"});
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
    auto c = run({"cubic", "verify", "--seed", "3"});
    CHECK(c.code == 0);
}

TEST_CASE("numeric kerr commands") {
    auto s = run_json({"kerr", "solve", "--F", "y2*t - (2*y3 - y1)", "--at", "x0=1,x1=3,x2=1,x3=1,x4=1"});
    CHECK(s["results"]["root"]["t"].get<double>() == 1.0);
    auto sec = run_json({"kerr", "section", "--H", "y4 - 2", "--grid", "2"});
    CHECK(sec["results"]["samples"].size() == 32);
    CHECK(sec["results"]["max_J"].get<double>() == 0.0);
}
