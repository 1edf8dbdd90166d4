#include "report.hpp"

#include <ostream>

namespace ternexp::cli {

std::string to_string(Verdict v)
{
    switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    case Verdict::counterexample: return "counterexample";
    case Verdict::inapplicable: return "inapplicable";
    }
    return "fail";
}

int exit_code(Verdict v)
{
    return v == Verdict::fail || v == Verdict::counterexample ? 1 : 0;
}

nlohmann::json Report::to_json() const
{
    return {
        {"command", command},
        {"parameters", parameters},
        {"verdict", to_string(verdict)},
        {"items", items},
        {"result", result},
        {"elapsed_ms", elapsed_ms},
    };
}

nlohmann::json exact(BigInt const& value)
{
    if (mpz_fits_slong_p(value.get_mpz_t())) return static_cast<std::int64_t>(value.get_si());
    return value.get_str();
}

void write_json(std::ostream& out, Report const& r)
{
    out << r.to_json().dump(2) << '\n';
}

namespace {

std::string cell(nlohmann::json const& v)
{
    if (v.is_string()) return v.get<std::string>();
    if (v.is_null()) return "";
    return v.dump();
}

} // namespace

void write_tsv(std::ostream& out, Report const& r)
{
    if (r.items.empty()) return;
    auto const& first = r.items.front();
    if (!first.is_object()) {
        for (auto const& item : r.items) out << cell(item) << '\n';
        return;
    }
    bool lead = true;
    for (auto const& [key, _] : first.items()) {
        out << (lead ? "" : "\t") << key;
        lead = false;
    }
    out << '\n';
    for (auto const& item : r.items) {
        lead = true;
        for (auto const& [key, _] : first.items()) {
            out << (lead ? "" : "\t") << (item.contains(key) ? cell(item.at(key)) : "");
            lead = false;
        }
        out << '\n';
    }
}

} // namespace ternexp::cli
