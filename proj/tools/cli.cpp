#include "cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <ostream>

#include <CLI11.hpp>

#include "report.hpp"
#include "ternexp/descent.hpp"
#include "ternexp/eqsolver.hpp"
#include "ternexp/errors.hpp"
#include "ternexp/lucas.hpp"
#include "ternexp/parallel.hpp"
#include "ternexp/quadforms.hpp"

namespace ternexp::cli {

namespace {

using nlohmann::json;

struct CommonOptions {
    bool json_out = false;
    bool tsv_out = false;
    std::optional<unsigned> threads;
    bool no_timing = false;

    unsigned thread_count() const
    {
        if (threads) return *threads;
        if (char const* env = std::getenv("TERNEXP_THREADS")) {
            try {
                return static_cast<unsigned>(std::stoul(env));
            } catch (std::exception const&) {
                throw precondition_error("TERNEXP_THREADS is not a non-negative integer");
            }
        }
        return 1;
    }
};

json triple_json(SolutionTriple const& s) { return {{"x", s.x}, {"y", s.y}, {"z", s.z}}; }

json box_json(SearchBox const& b) { return {{"xmax", b.x_max}, {"ymax", b.y_max}, {"zmax", b.z_max}}; }

json rep_json(DescentRep const& r)
{
    return {{"X1", exact(r.X1)}, {"Y1", exact(r.Y1)}, {"Z1", r.Z1}, {"t", r.t},
            {"lambda1", r.lambda1}, {"lambda2", r.lambda2}};
}

// Search items carry the structural classification of each triple.
Verdict classify_into(EqInstance const& inst, std::vector<SolutionTriple> const& sols, json& items)
{
    Verdict v = Verdict::pass;
    for (auto const& s : sols) {
        auto const c = classify(inst, s);
        json item = triple_json(s);
        item["class"] = ternexp::to_string(c.kind);
        item["witness"] = c.witness ? json{{"part", exact(c.witness->part)}, {"cofactor", exact(c.witness->cofactor)}}
                                    : json(nullptr);
        if (c.kind == SolutionClass::violation) v = Verdict::counterexample;
        items.push_back(std::move(item));
    }
    return v;
}

Report box_report(std::string command, BoxReport const& br)
{
    Report r;
    r.command = std::move(command);
    r.parameters = {{"A", br.instance.A}, {"B", br.instance.B}, {"n", br.instance.n}, {"ab_even", br.instance.ab_even}, {"box", box_json(br.box)}};
    for (auto const& s : br.solutions) {
        json item = triple_json(s);
        item["counterexample"] = std::find(br.counterexamples.begin(), br.counterexamples.end(), s) !=
                                 br.counterexamples.end();
        r.items.push_back(std::move(item));
    }
    r.verdict = br.passed() ? Verdict::pass : Verdict::counterexample;
    return r;
}

class Dispatcher {
public:
    Dispatcher() : app_("Exact verification tools for (an)^x + (bn)^y = ((a+b)n)^z and its supporting number theory", "ternexp")
    {
        app_.require_subcommand(1);
        app_.set_help_all_flag("--help-all");
        add_search();
        add_search_square();
        add_verify_theorem();
        add_verify_corollary();
        add_class_number();
        add_class_bound();
        add_lucas();
        add_primitive_divisor();
        add_defective_table();
        add_defective_scan();
        add_norm_solve();
        add_descent();
        add_verify_lemma25();
        add_chain();
    }

    int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
    {
        try {
            std::vector<std::string> reversed(args.rbegin(), args.rend());
            app_.parse(reversed);
        } catch (CLI::CallForHelp const&) {
            out << app_.help();
            return 0;
        } catch (CLI::CallForAllHelp const&) {
            out << app_.help("", CLI::AppFormatMode::All);
            return 0;
        } catch (CLI::ParseError const& e) {
            err << "error: " << e.what() << '\n';
            return 2;
        }

        for (auto const& [name, handler] : handlers_) {
            if (!app_.got_subcommand(name)) continue;
            try {
                auto const start = std::chrono::steady_clock::now();
                Report r = handler();
                if (!common_.no_timing) {
                    r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                                       std::chrono::steady_clock::now() - start).count();
                }
                if (common_.tsv_out)
                    write_tsv(out, r);
                else
                    write_json(out, r);
                return exit_code(r.verdict);
            } catch (precondition_error const& e) {
                err << "error: " << e.what() << '\n';
                return 2;
            } catch (verification_failure const& e) {
                err << "verification failure: " << e.what() << '\n';
                return 1;
            } catch (std::exception const& e) {
                err << "error: " << e.what() << '\n';
                return 2;
            }
        }
        err << "error: no subcommand given\n";
        return 2;
    }

private:
    CLI::App* sub(std::string const& name, std::string const& description, std::function<Report()> handler)
    {
        CLI::App* s = app_.add_subcommand(name, description);
        auto* fmt = s->add_option_group("format");
        fmt->add_flag("--json", common_.json_out, "JSON report (default)");
        fmt->add_flag("--tsv", common_.tsv_out, "One item per line, tab separated");
        fmt->require_option(0, 1);
        s->add_option("--threads", common_.threads, "Worker threads (0 = all cores; default from TERNEXP_THREADS or 1)");
        s->add_flag("--no-timing", common_.no_timing, "Report elapsed_ms as 0");
        handlers_.emplace(name, std::move(handler));
        return s;
    }

    void add_search()
    {
        auto* s = sub("search", "Solutions of (an)^x + (bn)^y = ((a+b)n)^z in a box", [this] {
            auto const inst = EqInstance::make(a_, b_, n_);
            Report r;
            r.command = "search";
            r.parameters = {{"a", a_}, {"b", b_}, {"n", n_}, {"box", box_json(box_)}};
            r.verdict = classify_into(inst, search(inst, box_, common_.thread_count()), r.items);
            return r;
        });
        s->add_option("--a", a_)->required();
        s->add_option("--b", b_)->required();
        s->add_option("--n", n_)->required();
        add_box(s);
    }

    void add_search_square()
    {
        auto* s = sub("search-square", "Solutions of (A^2 n)^x + (B^2 n)^y = ((A^2+B^2)n)^z in a box", [this] {
            auto const sq = SquareEqInstance::make(A_, B_, n_);
            auto const inst = sq.induced();
            Report r;
            r.command = "search-square";
            r.parameters = {{"A", A_}, {"B", B_}, {"n", n_}, {"box", box_json(box_)}};
            r.verdict = classify_into(inst, search(inst, box_, common_.thread_count()), r.items);
            return r;
        });
        s->add_option("--A", A_)->required();
        s->add_option("--B", B_)->required();
        s->add_option("--n", n_)->required();
        add_box(s);
    }

    void add_verify_theorem()
    {
        auto* s = sub("verify-theorem", "No solution with x > z > y when A > 8B^3, inside a box", [this] {
            return box_report("verify-theorem",
                              verify_no_xzy_solutions(SquareEqInstance::make_any_parity(A_, B_, n_), box_, common_.thread_count()));
        });
        s->add_option("--A", A_)->required();
        s->add_option("--B", B_)->required();
        s->add_option("--n", n_)->required();
        add_box(s);
    }

    void add_verify_corollary()
    {
        auto* s = sub("verify-corollary", "Only (1,1,1) when A > 8B^3 and B = 2 mod 4, inside a box", [this] {
            return box_report("verify-corollary",
                              verify_only_trivial_solution(SquareEqInstance::make(A_, B_, n_), box_, common_.thread_count()));
        });
        s->add_option("--A", A_)->required();
        s->add_option("--B", B_)->required();
        s->add_option("--n", n_)->required();
        add_box(s);
    }

    void add_box(CLI::App* s)
    {
        s->add_option_function<unsigned long>(
            "--box", [this](unsigned long v) { box_ = {v, v, v}; }, "Sets xmax = ymax = zmax");
        s->add_option("--xmax", box_.x_max);
        s->add_option("--ymax", box_.y_max);
        s->add_option("--zmax", box_.z_max);
    }

    void add_class_number()
    {
        auto* s = sub("class-number", "h(-4D) with its reduced forms", [this] {
            auto const forms = reduced_forms(D_);
            Report r;
            r.command = "class-number";
            r.parameters = {{"D", D_}};
            for (auto const& f : forms) r.items.push_back({{"a", f.a}, {"b", f.b}, {"c", f.c}});
            r.result = static_cast<std::int64_t>(forms.size());
            return r;
        });
        s->add_option("--D", D_)->required();
    }

    void add_class_bound()
    {
        auto* s = sub("class-bound", "h(-4D) < (4/pi) sqrt(D) log(2e sqrt(D)) for D = 1..dmax", [this] {
            if (dmax_ < 1) throw precondition_error("class-bound: --dmax must be >= 1");
            auto const certs = parallel_map(static_cast<std::size_t>(dmax_), common_.thread_count(),
                                            [](std::size_t i) { return certify_class_bound(static_cast<std::int64_t>(i) + 1); });
            Report r;
            r.command = "class-bound";
            r.parameters = {{"dmax", dmax_}, {"pi_upper", ternexp::to_string(pi_upper())}, {"e_lower", ternexp::to_string(e_lower())}};
            for (auto const& c : certs) {
                r.items.push_back({{"D", c.D}, {"class_number", c.class_number},
                                   {"bound_lower", ternexp::to_string(c.bound_lower)}, {"holds", c.holds}});
                if (!c.holds) r.verdict = Verdict::fail;
            }
            return r;
        });
        s->add_option("--dmax", dmax_)->required();
    }

    void add_lucas()
    {
        auto* s = sub("lucas", "Lucas number L_n for parameters (u, v)", [this] {
            auto const p = make_params(BigInt(u_), BigInt(v_));
            BigInt const value = lucas_number(p, ln_);
            Report r;
            r.command = "lucas";
            r.parameters = {{"u", u_}, {"v", v_}, {"n", ln_}};
            r.items.push_back({{"w", exact(p.w())}, {"n", ln_}, {"value", exact(value)}});
            r.result = exact(value);
            return r;
        });
        s->add_option("--u", u_)->required();
        s->add_option("--v", v_)->required();
        s->add_option("--n", ln_)->required();
    }

    void add_primitive_divisor()
    {
        auto* s = sub("primitive-divisor", "Smallest primitive divisor of L_n, or null if n-defective", [this] {
            if (ln_ < 2) throw precondition_error("primitive-divisor: requires n > 1");
            auto const p = make_params(BigInt(u_), BigInt(v_));
            auto const d = primitive_divisor(p, ln_);
            Report r;
            r.command = "primitive-divisor";
            r.parameters = {{"u", u_}, {"v", v_}, {"n", ln_}};
            r.items.push_back({{"lucas_number", exact(lucas_number(p, ln_))},
                               {"primitive_divisor", d ? exact(*d) : json(nullptr)},
                               {"defective", !d.has_value()}});
            r.result = d ? exact(*d) : json(nullptr);
            return r;
        });
        s->add_option("--u", u_)->required();
        s->add_option("--v", v_)->required();
        s->add_option("--n", ln_)->required();
    }

    void add_defective_table()
    {
        sub("defective-table", "Stored n-defective Lucas parameters for 4 < n <= 30, n != 6", [] {
            Report r;
            r.command = "defective-table";
            for (auto const& e : defective_table()) {
                bool const ok = is_defective(make_params(BigInt(e.u), BigInt(e.v)), e.n);
                r.items.push_back({{"n", e.n}, {"u", e.u}, {"v", e.v}, {"defective", ok}});
                if (!ok) r.verdict = Verdict::fail;
            }
            return r;
        });
    }

    void add_defective_scan()
    {
        auto* s = sub("defective-scan", "All n-defective (u, v) with 1 <= u <= umax, vmin <= v <= vmax", [this] {
            auto const found = scan_defective(static_cast<unsigned>(ln_), {1, umax_}, {vmin_, vmax_}, common_.thread_count());
            std::vector<ParamPair> expected;
            for (auto const& e : defective_table())
                if (e.n == ln_ && e.u >= 1 && e.u <= umax_ && e.v >= vmin_ && e.v <= vmax_) expected.push_back({e.u, e.v});
            std::sort(expected.begin(), expected.end());

            Report r;
            r.command = "defective-scan";
            r.parameters = {{"n", ln_}, {"umax", umax_}, {"vmin", vmin_}, {"vmax", vmax_}};
            for (auto const& p : found) {
                bool const listed = std::binary_search(expected.begin(), expected.end(), p);
                r.items.push_back({{"u", p.u}, {"v", p.v}, {"in_table", listed}});
            }
            if (ln_ > 30) {
                if (!found.empty()) r.verdict = Verdict::counterexample;
            } else if (found != expected) {
                r.verdict = Verdict::fail;
            }
            return r;
        });
        s->add_option("--n", ln_)->required();
        s->add_option("--umax", umax_)->required();
        s->add_option("--vmin", vmin_)->required();
        s->add_option("--vmax", vmax_)->required();
    }

    void add_norm_solve()
    {
        auto* s = sub("norm-solve", "Primitive solutions of X^2 + D Y^2 = k^Z, 1 <= Z <= zmax", [this] {
            auto const ctx = NormContext::make(D_, k_);
            Report r;
            r.command = "norm-solve";
            r.parameters = {{"D", D_}, {"k", k_}, {"zmax", zmax_}};
            for (auto const& sol : solve_norm_equation(ctx, zmax_, common_.thread_count()))
                r.items.push_back({{"X", exact(sol.X)}, {"Y", exact(sol.Y)}, {"Z", sol.Z}});
            return r;
        });
        s->add_option("--D", D_)->required();
        s->add_option("--k", k_)->required();
        s->add_option("--zmax", zmax_)->required();
    }

    void add_descent()
    {
        auto* s = sub("descent", "Decompose a solution as a power of a fundamental solution", [this] {
            auto const ctx = NormContext::make(D_, k_);
            NormSolution const sol{BigInt(X_), BigInt(Y_), Z_};
            if (!is_norm_solution(ctx, sol)) throw precondition_error("descent: (X, Y, Z) is not a primitive solution");
            Report r;
            r.command = "descent";
            r.parameters = {{"D", D_}, {"k", k_}, {"X", X_}, {"Y", Y_}, {"Z", Z_}};
            auto const h = class_number(D_);
            try {
                auto const rep = decompose(ctx, sol, h);
                json item = rep_json(rep);
                auto const link = lucas_link(ctx, rep, sol);
                item["class_number"] = h;
                item["lucas_link"] = ternexp::to_string(link);
                r.items.push_back(std::move(item));
                if (link == LinkStatus::fails) r.verdict = Verdict::fail;
            } catch (verification_failure const& e) {
                r.items.push_back({{"failure", e.what()}});
                r.verdict = Verdict::fail;
            }
            return r;
        });
        s->add_option("--D", D_)->required();
        s->add_option("--k", k_)->required();
        s->add_option("--X", X_)->required();
        s->add_option("--Y", Y_)->required();
        s->add_option("--Z", Z_)->required();
    }

    void add_verify_lemma25()
    {
        auto* s = sub("verify-lemma25", "Z <= 6 h(-4D) for solutions with Y in S(D)", [this] {
            auto const ctx = NormContext::make(D_, k_);
            unsigned long const zmax = zmax_ != 0 ? zmax_ : 6 * static_cast<unsigned long>(class_number(D_)) + 6;
            auto const rep = verify_exponent_bound(ctx, zmax, common_.thread_count());
            Report r;
            r.command = "verify-lemma25";
            r.parameters = {{"D", D_}, {"k", k_}, {"zmax", zmax}};
            for (auto const& it : rep.items) {
                json item = {{"X", exact(it.solution.X)}, {"Y", exact(it.solution.Y)}, {"Z", it.solution.Z},
                             {"bound", rep.bound}, {"within_bound", it.within_bound},
                             {"decomposition", it.rep ? rep_json(*it.rep) : json(nullptr)},
                             {"lucas_t", it.lucas_t ? exact(*it.lucas_t) : json(nullptr)},
                             {"lucas_link", ternexp::to_string(it.link)},
                             {"t_defective", it.t_defective ? json(*it.t_defective) : json(nullptr)},
                             {"exceptional", it.exceptional}, {"violation", it.violation}};
                if (!it.failure.empty()) item["failure"] = it.failure;
                r.items.push_back(std::move(item));
            }
            r.result = {{"class_number", rep.class_num}, {"bound", rep.bound},
                        {"solutions_scanned", rep.solutions_scanned}, {"qualifying", rep.items.size()}};
            r.verdict = rep.passed() ? (rep.items.empty() ? Verdict::inapplicable : Verdict::pass) : Verdict::fail;
            return r;
        });
        s->add_option("--D", D_)->required();
        s->add_option("--k", k_)->required();
        s->add_option("--zmax", zmax_, "Default 6 h(-4D) + 6");
    }

    void add_chain()
    {
        auto* s = sub("chain", "Exact refutation of (24/pi) A B1 log(2e A B1) > 8 A B log(A^2 n)", [this] {
            auto const rep = inequality_chain(A_, B_, B1_, n_);
            Report r;
            r.command = "chain";
            r.parameters = {{"A", A_}, {"B", B_}, {"B1", B1_}, {"n", n_}};
            for (auto const& l : rep.links)
                r.items.push_back({{"link", l.name}, {"ok", l.ok}, {"lhs", l.lhs}, {"rhs", l.rhs}});
            r.verdict = rep.passed() ? Verdict::pass : Verdict::fail;
            return r;
        });
        s->add_option("--A", A_)->required();
        s->add_option("--B", B_)->required();
        s->add_option("--B1", B1_)->required();
        s->add_option("--n", n_)->required();
    }

    CLI::App app_;
    std::map<std::string, std::function<Report()>> handlers_;
    CommonOptions common_;

    std::int64_t a_ = 0, b_ = 0, n_ = 0, A_ = 0, B_ = 0, B1_ = 0, D_ = 0, k_ = 0, dmax_ = 0;
    std::int64_t u_ = 0, v_ = 0, X_ = 0, Y_ = 0;
    long umax_ = 0, vmin_ = 0, vmax_ = 0;
    unsigned long ln_ = 0, zmax_ = 0, Z_ = 0;
    SearchBox box_;
};

} // namespace

int run(std::vector<std::string> const& args, std::ostream& out, std::ostream& err)
{
    Dispatcher d;
    return d.run(args, out, err);
}

} // namespace ternexp::cli
