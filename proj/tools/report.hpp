#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "ternexp/arith.hpp"

namespace ternexp::cli {

enum class Verdict { pass, fail, counterexample, inapplicable };

std::string to_string(Verdict v);

// 0 for pass/inapplicable, 1 for fail/counterexample.
int exit_code(Verdict v);

// Machine-readable result of one subcommand. Every number is an exact integer;
// integers beyond 64 bits and all rationals are strings.
struct Report {
    std::string command;
    nlohmann::json parameters = nlohmann::json::object();
    Verdict verdict = Verdict::pass;
    nlohmann::json items = nlohmann::json::array();
    nlohmann::json result;          // scalar answer for single-value commands, else null
    std::int64_t elapsed_ms = 0;

    nlohmann::json to_json() const;
};

// Integer when it fits in int64, decimal string otherwise.
nlohmann::json exact(BigInt const& value);

void write_json(std::ostream& out, Report const& r);

// Header row of item keys, then one tab-separated row per item.
void write_tsv(std::ostream& out, Report const& r);

} // namespace ternexp::cli
