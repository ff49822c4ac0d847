#pragma once

// File formats shared by the CLI and the tests.
//
//   matrix        {"rows": n, "cols": m, "re": [...], "im": [...]}   row-major, "im" optional
//   feature table {"points": [labels], "features": [[[re, im], ...], ...]}
//   block file    {"spaces": [descriptors], "blocks": [[matrix, ...], ...]}
//   suite config  {"checkers": [...], "n": int, "seed": int, "mode": "certified" | "tight"}
//
// Space descriptors: "hardy:N", "bergman:N", "finite:<path to feature table>".
// Malformed input raises Error(Errc::Parse).

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "json.hpp"

#include "berlab/cmatrix.hpp"
#include "berlab/harness.hpp"
#include "berlab/opmatrix.hpp"
#include "berlab/report.hpp"
#include "berlab/rkhs.hpp"

namespace berlab::io {

using nlohmann::json;

json read_json(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

json to_json(const ComplexMatrix& m);
ComplexMatrix matrix_from_json(const json& j);
ComplexMatrix load_matrix(const std::filesystem::path& path);

json feature_table_to_json(const SpaceModel& space);
SpaceModel space_from_feature_table(const json& j);
/// Relative finite:<path> descriptors resolve against base_dir.
SpaceModel parse_space(const std::string& descriptor,
                       const std::filesystem::path& base_dir = {});

BlockOperator load_block(const std::filesystem::path& path);

struct SuiteConfig {
  std::vector<std::string> checkers;
  std::size_t n = 0;
  std::uint64_t seed = 0;
  CheckMode mode = CheckMode::Certified;
};

CheckMode parse_mode(const std::string& text);
SuiteConfig suite_config_from_json(const json& j);

json point_to_json(const DomainPoint& p, const SpaceModel& space);
json to_json(const CheckReport& rep);
/// Everything except wall time, so equal suites serialize to equal bytes.
json to_json(const SuiteResult& suite);
/// Columns checker, seed, lhs, rhs, slack, pass, mode; numbers as %.17g.
std::string to_csv(const SuiteResult& suite);

/// %.17g
std::string format_double(double v);

}  // namespace berlab::io
