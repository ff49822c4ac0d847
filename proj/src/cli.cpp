#include "berlab/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <ostream>

#include "CLI11.hpp"

#include "berlab/berezin.hpp"
#include "berlab/error.hpp"
#include "berlab/harness.hpp"
#include "berlab/io.hpp"
#include "berlab/radii.hpp"

namespace berlab {

namespace {

using io::json;

constexpr std::size_t kKaraevSample = 64;

int exit_code_for(Errc code) {
  switch (code) {
    case Errc::DimMismatch:
    case Errc::ShapeMismatch:
    case Errc::OutOfDomain:
    case Errc::ArityMismatch:
    case Errc::NotHermitian:
    case Errc::NegativeSpectrum:
    case Errc::ContractionRequired:
    case Errc::NoConvergence:
      return kExitData;
    default:
      return kExitUsage;
  }
}

SearchConfig search_config(const std::string& grid, std::size_t refine) {
  SearchConfig cfg;
  if (!grid.empty()) {
    const std::size_t comma = grid.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument(grid);
      std::size_t used = 0;
      cfg.radial = std::stoul(grid.substr(0, comma), &used);
      if (used != comma) throw std::invalid_argument(grid);
      cfg.angular = std::stoul(grid.substr(comma + 1), &used);
      if (used != grid.size() - comma - 1) throw std::invalid_argument(grid);
    } catch (const std::logic_error&) {
      throw Error(Errc::Parse, "--grid expects R,A");
    }
  }
  if (refine > 0) cfg.refine_iterations = refine;
  cfg.validate();
  return cfg;
}

json estimate_json(const BerezinEstimate& e, const std::vector<const SpaceModel*>& spaces) {
  json argmax = json::array();
  for (std::size_t i = 0; i < e.argmax.size(); ++i) {
    argmax.push_back(io::point_to_json(e.argmax[i], *spaces.at(i)));
  }
  return {{"ber", e.value},  {"coarse", e.coarse_value}, {"argmax", argmax},
          {"seed", e.seed},  {"mode", "lower-estimate"}};
}

void emit(std::ostream& out, const json& j) { out << j.dump(2) << '\n'; }

struct BerArgs {
  std::string space, op, block, grid;
  std::size_t refine = 0;
};

int cmd_ber(const BerArgs& a, std::ostream& out, std::ostream& err) {
  const SearchConfig cfg = search_config(a.grid, a.refine);
  if (!a.block.empty()) {
    const BlockOperator t = io::load_block(a.block);
    std::vector<const SpaceModel*> parts;
    for (const SpaceModel& s : t.spaces().components()) parts.push_back(&s);
    const BerezinEstimate e = berezin_number(t.flat(), t.spaces(), cfg);
    emit(out, estimate_json(e, parts));
    err << "ber = " << io::format_double(e.value) << " (lower estimate, " << t.size()
        << "-component direct sum)\n";
    return kExitOk;
  }
  if (a.space.empty()) throw Error(Errc::Parse, "--space is required with --op");
  const SpaceModel space = io::parse_space(a.space);
  const BerezinEstimate e = berezin_number(io::load_matrix(a.op), space, cfg);
  emit(out, estimate_json(e, {&space}));
  err << "ber = " << io::format_double(e.value) << " (lower estimate on " << space.descriptor()
      << ")\n";
  return kExitOk;
}

int cmd_w(const std::string& op, std::ostream& out, std::ostream& err) {
  const ComplexMatrix a = io::load_matrix(op);
  if (!a.is_square()) throw Error(Errc::ShapeMismatch, "operator must be square");
  const RadiusEstimate w = numerical_radius(a);
  emit(out, {{"w", w.value}, {"theta", w.theta}, {"norm", operator_norm(a)}});
  err << "w = " << io::format_double(w.value) << '\n';
  return kExitOk;
}

struct SymbolArgs {
  std::string space, op, lambda;
  std::size_t index = 0;
  bool has_index = false;
};

int cmd_symbol(const SymbolArgs& a, std::ostream& out, std::ostream& err) {
  const SpaceModel space = io::parse_space(a.space);
  const ComplexMatrix op = io::load_matrix(a.op);
  DomainPoint p;
  if (a.has_index) {
    p = DomainPoint::listed(a.index);
  } else {
    const std::size_t comma = a.lambda.find(',');
    try {
      if (comma == std::string::npos) throw std::invalid_argument(a.lambda);
      p = DomainPoint::disk({std::stod(a.lambda.substr(0, comma)), std::stod(a.lambda.substr(comma + 1))});
    } catch (const std::logic_error&) {
      throw Error(Errc::Parse, "--lambda expects RE,IM");
    }
  }
  if (space.is_disk() == a.has_index) {
    throw Error(Errc::Parse, space.is_disk() ? "disk spaces take --lambda" : "finite sets take --index");
  }
  const cplx v = berezin_symbol(op, space, p);
  emit(out, {{"symbol", {v.real(), v.imag()}}, {"point", io::point_to_json(p, space)}});
  err << "symbol = " << io::format_double(v.real()) << " + " << io::format_double(v.imag()) << "i\n";
  return kExitOk;
}

int cmd_karaev(std::size_t n, std::ostream& out, std::ostream& err) {
  if (n < 2) throw Error(Errc::InvalidArgument, "--dim must be at least 2");
  ComplexMatrix a(n, n);
  a(1, 1) = 1.0;  // <., e_1> e_1 with e_1 = z
  const SpaceModel space = SpaceModel::hardy(n);
  const BerezinEstimate ber = berezin_number(a, space);
  const RadiusEstimate w = numerical_radius(a);
  const std::vector<cplx> sample = berezin_set_sample(a, space, kKaraevSample);
  double lo = sample.front().real(), hi = lo, max_imag = 0.0;
  for (const cplx& v : sample) {
    lo = std::min(lo, v.real());
    hi = std::max(hi, v.real());
    max_imag = std::max(max_imag, std::abs(v.imag()));
  }
  json j = estimate_json(ber, {&space});
  j["dim"] = n;
  j["w"] = w.value;
  j["norm"] = operator_norm(a);
  j["set_sample"] = {{"points", sample.size()}, {"min", lo}, {"max", hi}, {"max_abs_imag", max_imag}};
  emit(out, j);
  err << "karaev N=" << n << ": ber = " << io::format_double(ber.value)
      << ", w = " << io::format_double(w.value) << ", Ber sample in [" << io::format_double(lo)
      << ", " << io::format_double(hi) << "]\n";
  return kExitOk;
}

struct VerifyArgs {
  std::string suite, out = ".";
  bool all = false;
  std::optional<std::size_t> n;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> mode;
};

int cmd_verify(const VerifyArgs& a, std::ostream& out, std::ostream& err) {
  io::SuiteConfig cfg;
  if (a.all) {
    cfg.checkers = checker_catalog();
    cfg.n = 200;
  } else {
    cfg = io::suite_config_from_json(io::read_json(a.suite));
  }
  if (a.n) cfg.n = *a.n;
  if (a.seed) cfg.seed = *a.seed;
  if (a.mode) cfg.mode = io::parse_mode(*a.mode);

  const SuiteResult suite = run_suite(cfg.checkers, cfg.n, cfg.seed, cfg.mode);
  const std::filesystem::path dir(a.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  io::write_text(dir / "report.json", io::to_json(suite).dump(2) + "\n");
  io::write_text(dir / "summary.csv", io::to_csv(suite));

  json worst = json::object();
  for (const auto& [id, s] : suite.worst_slack) worst[id] = s;
  emit(out, {{"total", suite.total},
             {"passed", suite.passed},
             {"failed", suite.failed()},
             {"mode", to_string(suite.mode)},
             {"seed", suite.seed},
             {"worst_slack", worst},
             {"report", (dir / "report.json").string()},
             {"summary", (dir / "summary.csv").string()}});
  err << "verify: " << suite.passed << "/" << suite.total << " passed (" << to_string(suite.mode)
      << " mode, " << suite.wall_seconds << " s)\n";
  for (const std::string& id : suite.checkers) {
    const auto it = suite.reports.find(id);
    if (it == suite.reports.end()) continue;
    for (const CheckReport& r : it->second) {
      if (!r.all_pass()) err << "  FAIL " << id << " seed " << r.provenance.seed << ": " << r.label << '\n';
    }
  }
  return suite.failed() == 0 ? kExitOk : kExitFailure;
}

struct SweepArgs {
  std::string checker, family = "random", mode = "tight";
  std::size_t budget = 0;
  std::uint64_t seed = 0;
};

int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  if (a.budget == 0) throw Error(Errc::InvalidArgument, "--budget must be at least 1");
  if (a.family != "random" && a.family != "equality") {
    throw Error(Errc::InvalidArgument, "--family must be 'random' or 'equality'");
  }
  const Family family = a.family == "equality" ? Family::Equality : Family::Random;
  const TightnessResult t = tightness_search(a.checker, a.budget, a.seed, family, io::parse_mode(a.mode));
  json exps = json::object();
  if (t.exponents.r) exps["r"] = *t.exponents.r;
  if (t.exponents.q) exps["q"] = *t.exponents.q;
  if (t.exponents.alpha) exps["alpha"] = *t.exponents.alpha;
  emit(out, {{"checker", a.checker},
             {"family", a.family},
             {"ratio", t.ratio},
             {"evaluated", t.evaluated},
             {"violation", t.violation},
             {"exponent_override", exps},
             {"report", io::to_json(t.best)}});
  err << "sweep " << a.checker << ": best lhs/rhs = " << io::format_double(t.ratio) << " over "
      << t.evaluated << " instances" << (t.violation ? "  ** VIOLATION **" : "") << '\n';
  return t.violation ? kExitFailure : kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Berezin number toolkit"};
  app.require_subcommand(1);

  BerArgs ber;
  CLI::App* ber_cmd = app.add_subcommand("ber", "Berezin number of an operator (lower estimate)");
  ber_cmd->add_option("--space", ber.space, "hardy:N | bergman:N | finite:PATH");
  auto* op_opt = ber_cmd->add_option("--op", ber.op, "operator matrix JSON");
  auto* block_opt = ber_cmd->add_option("--block", ber.block, "block operator JSON");
  op_opt->excludes(block_opt);
  ber_cmd->require_option(1, 0);
  ber_cmd->add_option("--grid", ber.grid, "radial,angular grid counts");
  ber_cmd->add_option("--refine", ber.refine, "golden-section iterations")->check(CLI::PositiveNumber);

  std::string w_op;
  CLI::App* w_cmd = app.add_subcommand("w", "numerical radius");
  w_cmd->add_option("--op", w_op, "operator matrix JSON")->required();

  SymbolArgs sym;
  CLI::App* sym_cmd = app.add_subcommand("symbol", "Berezin symbol at one point");
  sym_cmd->add_option("--space", sym.space)->required();
  sym_cmd->add_option("--op", sym.op)->required();
  auto* lambda_opt = sym_cmd->add_option("--lambda", sym.lambda, "RE,IM for disk spaces");
  auto* index_opt = sym_cmd->add_option("--index", sym.index, "point index for finite sets");
  lambda_opt->excludes(index_opt);

  std::size_t karaev_dim = 64;
  CLI::App* karaev_cmd = app.add_subcommand("karaev", "rank-one <., z> z on truncated Hardy space");
  karaev_cmd->add_option("--dim", karaev_dim, "truncation N >= 2");

  VerifyArgs ver;
  std::size_t ver_n = 0;
  std::uint64_t ver_seed = 0;
  std::string ver_mode;
  CLI::App* ver_cmd = app.add_subcommand("verify", "run the checker suite");
  auto* suite_opt = ver_cmd->add_option("--suite", ver.suite, "suite config JSON");
  auto* all_opt = ver_cmd->add_flag("--all", ver.all, "whole catalog");
  suite_opt->excludes(all_opt);
  auto* n_opt = ver_cmd->add_option("--n", ver_n, "instances per checker");
  auto* seed_opt = ver_cmd->add_option("--seed", ver_seed, "base seed");
  auto* mode_opt = ver_cmd->add_option("--mode", ver_mode, "certified | tight");
  ver_cmd->add_option("--out", ver.out, "directory for report.json and summary.csv");

  SweepArgs sw;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "tightness search for one checker");
  sweep_cmd->add_option("--checker", sw.checker)->required();
  sweep_cmd->add_option("--budget", sw.budget)->required();
  sweep_cmd->add_option("--seed", sw.seed);
  sweep_cmd->add_option("--family", sw.family, "random | equality");
  sweep_cmd->add_option("--mode", sw.mode, "tight | certified");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (ber_cmd->parsed()) return cmd_ber(ber, out, err);
    if (w_cmd->parsed()) return cmd_w(w_op, out, err);
    if (sym_cmd->parsed()) {
      sym.has_index = index_opt->count() > 0;
      if (!sym.has_index && lambda_opt->count() == 0) {
        throw Error(Errc::Parse, "one of --lambda or --index is required");
      }
      return cmd_symbol(sym, out, err);
    }
    if (karaev_cmd->parsed()) return cmd_karaev(karaev_dim, out, err);
    if (ver_cmd->parsed()) {
      if (!ver.all && ver.suite.empty()) throw Error(Errc::Parse, "one of --suite or --all is required");
      if (n_opt->count()) ver.n = ver_n;
      if (seed_opt->count()) ver.seed = ver_seed;
      if (mode_opt->count()) ver.mode = ver_mode;
      return cmd_verify(ver, out, err);
    }
    if (sweep_cmd->parsed()) return cmd_sweep(sw, out, err);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

}  // namespace berlab
