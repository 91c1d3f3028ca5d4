#pragma once

#include "idiomval/oracle.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace idiomval {

struct VerifyCase {
    std::string name;
    IdiomSpec spec;
    std::size_t max_len = 0;
    EquivReport report;
    double ms = 0;
};

struct ResidualCase {
    std::size_t width = 0;
    unsigned base = 2;
    std::size_t states = 0;
    std::uint64_t lower_bound = 0;  // b^n
};

struct VerifySummary {
    std::vector<VerifyCase> cases;
    std::vector<ResidualCase> residuals;

    bool all_agree() const;
    nlohmann::json to_json() const;
};

/// Longest length <= wanted whose full enumeration stays within budget.
std::size_t capped_length(std::size_t alphabet_size, std::size_t wanted, std::uint64_t budget);

/// The desk-scale matrix: len (n<=3, b in {2,3}, both digit orders, with and
/// without delimiter), chunk (n<=2, b=2), eq (n<=3, |Σ|<=3), leq (n<=3, digit
/// subsets), general-eq (n<=2, |Σ|=2, singleton fillers). Each case runs up to
/// length 2n+6, capped by the budget. Also counts residuals for n<=3, b=2.
VerifySummary run_verify_matrix(std::uint64_t budget = default_enumeration_budget);

}  // namespace idiomval
