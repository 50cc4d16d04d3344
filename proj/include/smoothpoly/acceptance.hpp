// The acceptance suite: criteria 1-10, each a pass/fail verdict with the
// measurements behind it. Serialized lines print floats to 12 significant
// digits.
#pragma once

#include <functional>
#include <string>
#include <vector>

#include "smoothpoly/jsonfmt.hpp"

namespace smoothpoly::acceptance {

using smoothpoly::Json;

struct CriterionResult {
    int id = 0;
    std::string title;
    bool pass = false;
    Json metrics = Json::object();
};

inline constexpr int kCriteria = 10;

/// Rounds to 12 significant digits.
double round12(double v);

CriterionResult run_criterion(int id, unsigned threads = 1);

/// Criteria 1-9 in order; `on_result` sees each as it finishes.
std::vector<CriterionResult> run_suite(unsigned threads, const std::function<void(const CriterionResult&)>& on_result = {});

/// One JSON object per line, without timings.
std::string to_json_line(const CriterionResult& r);

}  // namespace smoothpoly::acceptance
