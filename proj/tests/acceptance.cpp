// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "cli.hpp"
#include "oracles.hpp"
#include "ternexp/arith.hpp"
#include "ternexp/descent.hpp"
#include "ternexp/eqsolver.hpp"
#include "ternexp/lucas.hpp"
#include "ternexp/quadforms.hpp"

using namespace ternexp;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
    bool ok = true;
    std::string detail;
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string run_binary(std::string const& args, int& status)
{
    std::string const cmd = std::string(TERNEXP_CLI_PATH) + " " + args + " 2>&1";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        status = -1;
        return {};
    }
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    int const raw = pclose(pipe);
    status = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
    return out;
}

Outcome class_numbers()
{
    Outcome o;
    for (auto [D, h] : std::vector<std::pair<int, int>>{{6, 2}, {14, 4}}) {
        auto const t0 = Clock::now();
        int status = 0;
        auto const out = run_binary("class-number --D " + std::to_string(D), status);
        double const dt = seconds_since(t0);
        auto const j = nlohmann::json::parse(out, nullptr, false);
        bool const good = status == 0 && !j.is_discarded() && j["result"] == h && dt < 1.0;
        o.ok = o.ok && good;
        o.detail += "h(-" + std::to_string(4 * D) + ")=" +
                    (j.is_discarded() ? std::string("?") : j["result"].dump()) + " in " +
                    std::to_string(dt).substr(0, 5) + "s; ";
    }
    return o;
}

Outcome class_bound()
{
    auto const t0 = Clock::now();
    std::vector<std::int64_t> failing;
    for (std::int64_t D = 1; D <= 10000; ++D)
        if (!check_class_bound(D)) failing.push_back(D);
    double const dt = seconds_since(t0);
    Outcome o{failing.empty() && dt < 60.0, ""};
    o.detail = "D=1..10000, " + std::to_string(failing.size()) + " failures, " + std::to_string(dt).substr(0, 5) + "s";
    return o;
}

Outcome defective_table_match()
{
    auto const t0 = Clock::now();
    Outcome o;
    std::map<unsigned, std::set<std::pair<long, long>>> expected;
    std::size_t not_defective = 0;
    for (auto const& e : defective_table()) {
        if (!is_defective(make_params(e.u, e.v), e.n)) ++not_defective;
        if (e.u >= 1 && e.u <= 12 && e.v >= -1400 && e.v <= 10) expected[e.n].insert({e.u, e.v});
    }
    std::size_t mismatched_n = 0, found = 0;
    for (unsigned n : {5u, 7u, 8u, 10u, 12u, 13u, 18u, 30u}) {
        std::set<std::pair<long, long>> got;
        for (auto const& p : scan_defective(n, {1, 12}, {-1400, 10}))
            got.insert({p.u, p.v});
        found += got.size();
        if (got != expected[n]) ++mismatched_n;
    }
    double const dt = seconds_since(t0);
    o.ok = not_defective == 0 && mismatched_n == 0 && defective_table().size() == 23 && dt < 300.0;
    o.detail = std::to_string(defective_table().size()) + " entries, " + std::to_string(not_defective) +
               " not defective; scan found " + std::to_string(found) + ", " + std::to_string(mismatched_n) +
               " n with mismatches; " + std::to_string(dt).substr(0, 5) + "s";
    return o;
}

Outcome non_defective_window()
{
    auto const t0 = Clock::now();
    std::size_t hits = 0;
    for (unsigned n = 31; n <= 40; ++n) hits += scan_defective(n, {1, 10}, {-100, 10}).size();
    double const dt = seconds_since(t0);
    return {hits == 0 && dt < 120.0,
            "n=31..40, " + std::to_string(hits) + " defective pairs, " + std::to_string(dt).substr(0, 5) + "s"};
}

Outcome lucas_cross_check()
{
    std::mt19937_64 rng(20261017);
    std::uniform_int_distribution<long> dist(-20, 20);
    int params = 0, mismatches = 0;
    while (params < 100) {
        long const u = dist(rng), v = dist(rng);
        auto const made = try_make_params(u, v);
        if (!std::holds_alternative<LucasParams>(made)) continue;
        ++params;
        auto const seq = lucas_sequence(std::get<LucasParams>(made), 41);
        for (unsigned n = 0; n <= 40; ++n)
            if (seq[n] != oracle::lucas_closed_form(u, v, n)) ++mismatches;
    }
    return {mismatches == 0, std::to_string(params) + " params, n=0..40, " + std::to_string(mismatches) + " mismatches"};
}

Outcome descent()
{
    auto const t0 = Clock::now();
    Outcome o;
    for (auto [D, k] : std::vector<std::pair<std::int64_t, std::int64_t>>{{6, 7}, {14, 15}, {3, 7}, {5, 3}, {11, 3}}) {
        auto const ctx = NormContext::make(D, k);
        std::int64_t const h = class_number(D);
        unsigned long const z_max = 6 * h + 2;
        auto const rep = verify_exponent_bound(ctx, z_max);

        // Independent count of solutions with Y in S(D).
        std::size_t expected = 0;
        for (auto const& s : solve_norm_equation(ctx, z_max))
            if (in_s_set(s.Y, BigInt(D))) ++expected;

        std::size_t bad = 0;
        for (auto const& it : rep.items) {
            auto const& s = it.solution;
            bool good = it.rep.has_value() && !it.violation;
            if (good) {
                auto const& r = *it.rep;
                good = expand(r, D) == QuadRingElem{s.X, s.Y} && r.Z1 * r.t == s.Z && h % std::int64_t(r.Z1) == 0 &&
                       is_norm_solution(ctx, {r.X1, r.Y1, r.Z1}) && (r.lambda1 == 1 || r.lambda1 == -1) &&
                       (r.lambda2 == 1 || r.lambda2 == -1);
                if (good && it.link != LinkStatus::inapplicable) {
                    auto const L = lucas_number(make_params(2 * r.X1, -4 * D * r.Y1 * r.Y1), r.t);
                    good = it.link == LinkStatus::holds && s.Y == r.Y1 * abs(L);
                }
            }
            good = good && s.Z <= static_cast<unsigned long>(6 * h);
            if (!good) ++bad;
        }
        bool const ok = rep.passed() && bad == 0 && rep.items.size() == expected;
        o.ok = o.ok && ok;
        o.detail += "(" + std::to_string(D) + "," + std::to_string(k) + ") h=" + std::to_string(h) + " " +
                    std::to_string(rep.items.size()) + " items/" + std::to_string(bad) + " bad; ";
    }
    double const dt = seconds_since(t0);
    o.ok = o.ok && dt < 300.0;
    o.detail += std::to_string(dt).substr(0, 5) + "s";
    return o;
}

Outcome box_scans()
{
    Outcome o;
    std::size_t runs = 0, fails = 0;
    for (auto [A, B] : std::vector<std::pair<std::int64_t, std::int64_t>>{{65, 2}, {67, 2}, {217, 3}})
        for (std::int64_t n : {2, 3, 5}) {
            ++runs;
            if (!verify_no_xzy_solutions(SquareEqInstance::make_any_parity(A, B, n), {6, 6, 6}).passed()) ++fails;
        }
    for (std::int64_t A : {65, 433})
        for (std::int64_t n : {2, 3}) {
            ++runs;
            auto const r = verify_only_trivial_solution(SquareEqInstance::make(A, 2, n), {6, 6, 6});
            if (!r.passed() || r.solutions != std::vector<SolutionTriple>{{1, 1, 1}}) ++fails;
        }
    o.ok = fails == 0;
    o.detail = std::to_string(runs) + " box checks, " + std::to_string(fails) + " failures";
    return o;
}

Outcome chain()
{
    auto const t0 = Clock::now();
    std::size_t cases = 0, fails = 0;
    for (std::int64_t B : {2, 3, 4, 5})
        for (std::int64_t B1 = 1; B1 <= B; ++B1) {
            if (B % B1 != 0) continue;
            std::int64_t const lo = 8 * B * B * B;
            for (std::int64_t A = lo + 1; A <= lo + 200; ++A)
                for (std::int64_t n = 2; n <= 10; ++n) {
                    ++cases;
                    if (!inequality_chain(A, B, B1, n).passed()) ++fails;
                }
        }
    double const dt = seconds_since(t0);
    return {fails == 0 && dt < 300.0, std::to_string(cases) + " cases, " + std::to_string(fails) + " failures, " +
                                          std::to_string(dt).substr(0, 5) + "s"};
}

Outcome identity_solution()
{
    std::size_t instances = 0, missing = 0;
    for (std::int64_t a = 2; a <= 40 && instances < 200; ++a)
        for (std::int64_t b = 2; b <= a && instances < 200; ++b) {
            if (std::gcd(a, b) != 1) continue;
            std::int64_t const n = 2 + (a * 7 + b) % 9;
            auto const sols = search(EqInstance::make(a, b, n), {3, 3, 3});
            ++instances;
            if (std::find(sols.begin(), sols.end(), SolutionTriple{1, 1, 1}) == sols.end()) ++missing;
        }
    return {instances == 200 && missing == 0,
            std::to_string(instances) + " instances, " + std::to_string(missing) + " without (1,1,1)"};
}

Outcome determinism()
{
    std::vector<std::string> const commands = {
        "search --a 3 --b 2 --n 2 --box 6",
        "search-square --A 65 --B 2 --n 2 --box 6",
        "verify-theorem --A 65 --B 2 --n 3 --box 6",
        "verify-corollary --A 433 --B 2 --n 2 --box 6",
        "class-bound --dmax 500",
        "defective-scan --n 13 --umax 12 --vmin -1400 --vmax 10",
        "norm-solve --D 14 --k 15 --zmax 12",
        "verify-lemma25 --D 6 --k 7",
    };
    std::size_t differing = 0;
    for (auto const& c : commands)
        for (char const* fmt : {"--json", "--tsv"}) {
            std::string reference;
            for (int threads : {1, 2, 8}) {
                int status = 0;
                auto const out =
                    run_binary(c + " " + fmt + " --no-timing --threads " + std::to_string(threads), status);
                if (threads == 1)
                    reference = out;
                else if (out != reference || out.empty())
                    ++differing;
            }
        }
    return {differing == 0, std::to_string(commands.size() * 2) + " command/format pairs x threads {1,2,8}, " +
                                std::to_string(differing) + " differing outputs"};
}

} // namespace

int main()
{
    std::vector<std::pair<std::string, std::function<Outcome()>>> const criteria = {
        {"class numbers via CLI", class_numbers},
        {"class bound for D <= 10^4", class_bound},
        {"defective table and scan", defective_table_match},
        {"no defective pairs for n = 31..40", non_defective_window},
        {"Lucas recurrence vs closed form", lucas_cross_check},
        {"norm equation descent", descent},
        {"x > z > y and trivial-only boxes", box_scans},
        {"inequality chain", chain},
        {"(1,1,1) always solves", identity_solution},
        {"thread-count determinism", determinism},
    };
    int failed = 0, index = 0;
    for (auto const& [name, check] : criteria) {
        ++index;
        auto const t0 = Clock::now();
        Outcome o;
        try {
            o = check();
        } catch (std::exception const& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        double const dt = seconds_since(t0);
        if (!o.ok) ++failed;
        std::printf("%s %2d %-36s %8.2fs  %s\n", o.ok ? "PASS" : "FAIL", index, name.c_str(), dt, o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", index - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
