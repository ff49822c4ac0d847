#include "berlab/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "berlab/error.hpp"

namespace berlab::io {

namespace {

[[noreturn]] void malformed(const std::string& what) { throw Error(Errc::Parse, what); }

const json& field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) malformed(std::string("missing field '") + key + "'");
  return j.at(key);
}

std::size_t count_field(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<long long>() >= 0)) {
    malformed(std::string("field '") + key + "' must be a nonnegative integer");
  }
  return v.get<std::size_t>();
}

std::vector<double> number_array(const json& j, const char* key) {
  const json& v = field(j, key);
  if (!v.is_array()) malformed(std::string("field '") + key + "' must be an array");
  std::vector<double> out;
  out.reserve(v.size());
  for (const json& e : v) {
    if (!e.is_number()) malformed(std::string("field '") + key + "' must hold numbers");
    out.push_back(e.get<double>());
  }
  return out;
}

cplx scalar_from_json(const json& e) {
  if (e.is_number()) return {e.get<double>(), 0.0};
  if (e.is_array() && e.size() == 2 && e[0].is_number() && e[1].is_number()) {
    return {e[0].get<double>(), e[1].get<double>()};
  }
  malformed("feature entries must be numbers or [re, im] pairs");
}

std::size_t parse_size(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) malformed(what + " must be a positive integer");
  return static_cast<std::size_t>(v);
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

}  // namespace

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

json read_json(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) malformed("cannot open '" + path.string() + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    malformed("'" + path.string() + "': " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw Error(Errc::InvalidArgument, "cannot write '" + path.string() + "'");
  out << text;
}

json to_json(const ComplexMatrix& m) {
  json re = json::array();
  json im = json::array();
  for (const cplx& e : m.entries()) {
    re.push_back(e.real());
    im.push_back(e.imag());
  }
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"re", re}, {"im", im}};
}

ComplexMatrix matrix_from_json(const json& j) {
  const std::size_t rows = count_field(j, "rows");
  const std::size_t cols = count_field(j, "cols");
  if (rows == 0 || cols == 0) malformed("matrix dimensions must be positive");
  const std::vector<double> re = number_array(j, "re");
  const std::vector<double> im = j.contains("im") ? number_array(j, "im") : std::vector<double>(re.size());
  if (re.size() != rows * cols || im.size() != rows * cols) {
    malformed("matrix needs rows * cols = " + std::to_string(rows * cols) + " entries");
  }
  std::vector<cplx> entries(re.size());
  for (std::size_t k = 0; k < re.size(); ++k) entries[k] = {re[k], im[k]};
  try {
    return ComplexMatrix(rows, cols, std::move(entries));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

ComplexMatrix load_matrix(const std::filesystem::path& path) { return matrix_from_json(read_json(path)); }

json feature_table_to_json(const SpaceModel& space) {
  if (space.is_disk()) throw Error(Errc::InvalidArgument, "only finite sets have a feature table");
  json features = json::array();
  for (std::size_t i = 0; i < space.point_count(); ++i) {
    json row = json::array();
    for (const cplx& v : space.feature_row(i)) row.push_back({v.real(), v.imag()});
    features.push_back(row);
  }
  return {{"points", space.labels()}, {"features", features}};
}

SpaceModel space_from_feature_table(const json& j) {
  const json& features = field(j, "features");
  if (!features.is_array()) malformed("'features' must be an array of rows");
  std::vector<CVector> rows;
  for (const json& row : features) {
    if (!row.is_array()) malformed("each feature row must be an array");
    CVector r;
    for (const json& e : row) r.push_back(scalar_from_json(e));
    rows.push_back(std::move(r));
  }
  std::vector<std::string> labels;
  if (j.contains("points")) {
    const json& pts = j.at("points");
    if (!pts.is_array()) malformed("'points' must be an array");
    for (const json& p : pts) labels.push_back(p.is_string() ? p.get<std::string>() : p.dump());
  }
  try {
    return SpaceModel::finite_set(std::move(labels), std::move(rows));
  } catch (const Error& e) {
    malformed(e.what());
  }
}

SpaceModel parse_space(const std::string& descriptor, const std::filesystem::path& base_dir) {
  const std::size_t colon = descriptor.find(':');
  if (colon == std::string::npos) malformed("space descriptor '" + descriptor + "' lacks a ':'");
  const std::string kind = descriptor.substr(0, colon);
  const std::string arg = descriptor.substr(colon + 1);
  if (kind == "hardy" || kind == "bergman") {
    const std::size_t n = parse_size(arg, "space dimension");
    if (n == 0) malformed("space dimension must be positive");
    return kind == "hardy" ? SpaceModel::hardy(n) : SpaceModel::bergman(n);
  }
  if (kind == "finite") {
    std::filesystem::path p(arg);
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    return space_from_feature_table(read_json(p));
  }
  malformed("unknown space kind '" + kind + "'");
}

BlockOperator load_block(const std::filesystem::path& path) {
  const json j = read_json(path);
  const json& spaces = field(j, "spaces");
  const json& blocks = field(j, "blocks");
  if (!spaces.is_array() || !blocks.is_array()) malformed("'spaces' and 'blocks' must be arrays");
  std::vector<SpaceModel> parts;
  for (const json& s : spaces) {
    if (!s.is_string()) malformed("space descriptors must be strings");
    parts.push_back(parse_space(s.get<std::string>(), path.parent_path()));
  }
  BlockOperator::Grid grid;
  for (const json& row : blocks) {
    if (!row.is_array()) malformed("each block row must be an array");
    std::vector<ComplexMatrix> r;
    for (const json& m : row) r.push_back(matrix_from_json(m));
    grid.push_back(std::move(r));
  }
  return assemble(std::move(grid), DirectSumSpace(std::move(parts)));
}

CheckMode parse_mode(const std::string& text) {
  if (text == "certified") return CheckMode::Certified;
  if (text == "tight") return CheckMode::Tight;
  malformed("mode must be 'certified' or 'tight'");
}

SuiteConfig suite_config_from_json(const json& j) {
  SuiteConfig cfg;
  const json& ids = field(j, "checkers");
  if (!ids.is_array()) malformed("'checkers' must be an array");
  for (const json& id : ids) {
    if (!id.is_string()) malformed("checker ids must be strings");
    cfg.checkers.push_back(id.get<std::string>());
  }
  cfg.n = count_field(j, "n");
  if (j.contains("seed")) {
    if (!j.at("seed").is_number_integer()) malformed("'seed' must be an integer");
    cfg.seed = j.at("seed").get<std::uint64_t>();
  }
  if (j.contains("mode")) {
    if (!j.at("mode").is_string()) malformed("'mode' must be a string");
    cfg.mode = parse_mode(j.at("mode").get<std::string>());
  }
  return cfg;
}

json point_to_json(const DomainPoint& p, const SpaceModel& space) {
  if (space.is_disk()) return {p.z.real(), p.z.imag()};
  return {{"index", p.index}, {"label", space.labels().at(p.index)}};
}

json to_json(const CheckReport& rep) {
  const Provenance& pv = rep.provenance;
  json details = json::array();
  for (const CheckReport& d : rep.details) details.push_back(to_json(d));
  return {{"checker", rep.checker},
          {"label", rep.label},
          {"lhs", rep.lhs},
          {"rhs", rep.rhs},
          {"slack", rep.slack},
          {"tol", rep.tol},
          {"pass", rep.pass},
          {"mode", to_string(rep.mode)},
          {"provenance",
           {{"seed", pv.seed},
            {"dims", pv.dims},
            {"space", pv.space},
            {"r", optional_number(pv.r)},
            {"p", optional_number(pv.p)},
            {"q", optional_number(pv.q)},
            {"alpha", optional_number(pv.alpha)},
            {"pair", pv.pair}}},
          {"details", details}};
}

json to_json(const SuiteResult& suite) {
  json reports = json::object();
  json worst = json::object();
  for (const std::string& id : suite.checkers) {
    json list = json::array();
    if (auto it = suite.reports.find(id); it != suite.reports.end()) {
      for (const CheckReport& r : it->second) list.push_back(to_json(r));
    }
    reports[id] = list;
    if (auto it = suite.worst_slack.find(id); it != suite.worst_slack.end()) worst[id] = it->second;
  }
  return {{"checkers", suite.checkers}, {"seed", suite.seed},       {"mode", to_string(suite.mode)},
          {"total", suite.total},       {"passed", suite.passed},   {"failed", suite.failed()},
          {"worst_slack", worst},       {"reports", reports}};
}

std::string to_csv(const SuiteResult& suite) {
  std::ostringstream out;
  out << "checker,seed,lhs,rhs,slack,pass,mode\n";
  for (const std::string& id : suite.checkers) {
    auto it = suite.reports.find(id);
    if (it == suite.reports.end()) continue;
    for (const CheckReport& r : it->second) {
      out << id << ',' << r.provenance.seed << ',' << format_double(r.lhs) << ','
          << format_double(r.rhs) << ',' << format_double(r.slack) << ','
          << (r.all_pass() ? "true" : "false") << ',' << to_string(r.mode) << '\n';
    }
  }
  return out.str();
}

}  // namespace berlab::io
