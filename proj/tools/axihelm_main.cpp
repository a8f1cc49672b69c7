// Command-line front end: catalog verification, Moutard/Darboux transforms of
// user expressions, superposition, one-form quadrature, singularity scans, and
// field export. Reports go to stdout (JSON/CSV), diagnostics to stderr.
// Exit codes: 0 pass, 1 verification failure, 2 usage/config error,
// 3 numerical or I/O failure.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "axihelm/axisym.hpp"
#include "axihelm/catalog.hpp"
#include "axihelm/darboux.hpp"
#include "axihelm/moutard.hpp"
#include "axihelm/quadrature.hpp"
#include "axihelm/suite.hpp"
#include "axihelm/verify.hpp"

namespace {

using json = nlohmann::json;
using namespace axihelm;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFail = 1;
constexpr int kExitUsage = 2;
constexpr int kExitNumeric = 3;

struct CommonConfig {
  std::vector<double> domainBounds;  // rMin,rMax,zMin,zMax
  std::vector<int> gridSizes;        // nR,nZ
  uint64_t rngSeed = 0x5eed5eedull;
  int nPoints = 200;
  double tolerance = 1e-8;
  std::string format = "json";
  std::string outPath;
  std::vector<std::string> paramArgs;

  Domain domain() const {
    Domain d = Domain::standard();
    if (!domainBounds.empty()) {
      if (domainBounds.size() != 4)
        throw CLI::ValidationError("--domain expects rMin,rMax,zMin,zMax");
      d = Domain::box(domainBounds[0], domainBounds[1], domainBounds[2], domainBounds[3]);
    }
    d.validate();
    return d;
  }

  std::pair<int, int> grid(int defR = 101, int defZ = 101) const {
    if (gridSizes.empty()) return {defR, defZ};
    if (gridSizes.size() != 2) throw CLI::ValidationError("--grid expects nR,nZ");
    if (gridSizes[0] < 2 || gridSizes[1] < 2)
      throw CLI::ValidationError("--grid sizes must be at least 2");
    return {gridSizes[0], gridSizes[1]};
  }

  Params params() const {
    Params p;
    for (const auto& arg : paramArgs) {
      auto eq = arg.find('=');
      if (eq == std::string::npos || eq == 0)
        throw CLI::ValidationError("--param expects name=value, got '" + arg + "'");
      std::string name = arg.substr(0, eq);
      try {
        size_t used = 0;
        double v = std::stod(arg.substr(eq + 1), &used);
        if (used != arg.size() - eq - 1) throw std::invalid_argument("trailing characters");
        p.set(name, v);
      } catch (const std::exception&) {
        throw CLI::ValidationError("--param value for '" + name + "' is not a number");
      }
    }
    return p;
  }
};

/// Flags shared by every subcommand. `--seed` names the RNG seed except on
/// `transform`, where it is the seed expression and only --rng-seed remains.
void addCommonOptions(CLI::App* cmd, CommonConfig& cfg, bool seedIsRng = true) {
  cmd->add_option("--domain", cfg.domainBounds, "Domain bounds rMin,rMax,zMin,zMax")
      ->delimiter(',');
  cmd->add_option("--grid", cfg.gridSizes, "Grid sizes nR,nZ")->delimiter(',');
  cmd->add_option(seedIsRng ? "--seed,--rng-seed" : "--rng-seed", cfg.rngSeed, "Sampling seed");
  cmd->add_option("--points", cfg.nPoints, "Sample points per identity check");
  cmd->add_option("--tolerance", cfg.tolerance, "Scaled-residual tolerance");
  cmd->add_option("--format", cfg.format, "Output format")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd->add_option("--out", cfg.outPath, "Output path (default stdout)");
  cmd->add_option("--param", cfg.paramArgs, "Parameter binding name=value (repeatable)");
}

/// Output sink: stdout by default, a file when --out is given.
class Sink {
public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path, std::ios::binary);
      if (!file_) throw std::ios_base::failure("cannot open output file '" + path + "'");
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }
  void finish() {
    stream().flush();
    if (!stream()) throw std::ios_base::failure("write failure on output stream");
  }

private:
  std::ofstream file_;
};

Expr parseExprArg(const std::string& text, const std::string& flag) {
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw CLI::ValidationError(flag + ": " + e.what());
  }
}

void writeFieldCsv(const Field& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::ios_base::failure("cannot open field file '" + path + "'");
  f.writeCsv(os);
  os.flush();
  if (!os) throw std::ios_base::failure("write failure on field file '" + path + "'");
}

// ---------------------------------------------------------------------------

int cmdVerifyCatalog(const CommonConfig& cfg) {
  SuiteOptions opt;
  opt.domain = cfg.domain();
  opt.seed = cfg.rngSeed;
  opt.nPoints = cfg.nPoints;
  opt.tolerance = cfg.tolerance;
  auto results = runCatalogSuite(opt);
  Sink sink(cfg.outPath);
  int failures = 0, blowups = 0;
  for (const auto& c : results) {
    failures += c.pass ? 0 : 1;
    blowups += c.nonFiniteBlowup ? 1 : 0;
    json line = {{"check", c.name}, {"pass", c.pass}, {"detail", c.detail}};
    sink.stream() << line.dump() << "\n";
  }
  json summary = {{"summary",
                   {{"checks", results.size()},
                    {"failures", failures},
                    {"non_finite_blowups", blowups},
                    {"rng_seed", opt.seed},
                    {"tolerance", opt.tolerance}}}};
  sink.stream() << summary.dump() << "\n";
  sink.finish();
  std::cerr << "verify-catalog: " << results.size() - failures << "/" << results.size()
            << " checks passed\n";
  if (blowups > 0) return kExitNumeric;
  return failures == 0 ? kExitOk : kExitVerifyFail;
}

int cmdTransform(const CommonConfig& cfg, const std::string& mode, const std::string& seedText,
                 const std::string& uText, const std::string& fieldOut) {
  Expr seed = parseExprArg(seedText, "--seed");
  Expr u = parseExprArg(uText, "--u");
  Params p = cfg.params();
  Domain dom = cfg.domain();
  if (mode == "darboux" && !(u.isNumber(0)))
    throw CLI::ValidationError("--mode darboux requires a flat seed equation (--u 0)");

  auto precheck = residualReport(u, seed, p, dom, cfg.nPoints, cfg.rngSeed, cfg.tolerance);
  if (!precheck.pass()) {
    std::cerr << "transform: seed expression does not solve the declared potential (max scaled "
                 "residual "
              << precheck.maxScaledResidual << ")\n";
    Sink sink(cfg.outPath);
    sink.stream() << json{{"error", "seed rejected"}, {"precheck", precheck.toJson()}}.dump()
                  << "\n";
    sink.finish();
    return kExitVerifyFail;
  }

  json out;
  out["precheck"] = precheck.toJson();
  int exitCode = kExitOk;

  if (mode == "moutard") {
    MoutardResult res = applyMoutard(u, seed);
    auto check = residualReport(res.newPotential, res.newYh, p, dom, cfg.nPoints, cfg.rngSeed,
                                cfg.tolerance);
    out["record"] = res.record.toJson();
    out["potential"] = print(fold(res.newPotential));
    out["solution"] = print(fold(res.newYh));
    out["residual"] = check.toJson();
    if (!check.pass()) exitCode = kExitVerifyFail;
  } else {
    AnsatzParams ap{p.find("C").value_or(Defaults::C), p.find("C1").value_or(Defaults::C1)};
    double kappa = p.find("kappa").value_or(Defaults::kappa);
    auto [nR, nZ] = cfg.grid();
    Point anchor{0.5 * (dom.rMin + dom.rMax), 0.5 * (dom.zMin + dom.zMax)};
    Field q = primitiveField(qSeedForm(seed), p, dom, nR, nZ, anchor, kappa);
    Field sol = darbouxSolutionField(seed, q, ap, p);
    Expr potential = helmholtzPotential(ap);
    auto fd = fdResidualField(potential, sol, p);
    std::string path = fieldOut.empty() ? "darboux_solution.csv" : fieldOut;
    writeFieldCsv(sol, path);
    TransformRecord record;
    record.kind = "darboux";
    record.seedPotential = print(u);
    record.seedSolutions = {print(seed)};
    record.parameters = {{"C", ap.C}, {"C1", ap.C1}, {"kappa", kappa}};
    record.newPotential = print(fold(potential));
    out["record"] = record.toJson();
    out["potential"] = print(fold(potential));
    out["field_file"] = path;
    out["fd_residual"] = fd.toJson();
    if (!fd.pass()) exitCode = kExitVerifyFail;
  }
  Sink sink(cfg.outPath);
  sink.stream() << out.dump() << "\n";
  sink.finish();
  return exitCode;
}

int cmdSuperpose(const CommonConfig& cfg, const std::string& y1Text, const std::string& y2Text,
                 const std::string& uText, const std::string& fText,
                 const std::string& fieldOut) {
  Expr y1 = parseExprArg(y1Text, "--y1");
  Expr y2 = parseExprArg(y2Text, "--y2");
  Expr u = parseExprArg(uText, "--u");
  Params p = cfg.params();
  Domain dom = cfg.domain();

  for (auto [label, y] : {std::pair<const char*, Expr>{"y1", y1}, {"y2", y2}}) {
    auto pre = residualReport(u, y, p, dom, cfg.nPoints, cfg.rngSeed, cfg.tolerance);
    if (!pre.pass()) {
      std::cerr << "superpose: " << label << " does not solve the declared potential\n";
      Sink sink(cfg.outPath);
      sink.stream() << json{{"error", std::string(label) + " rejected"},
                            {"precheck", pre.toJson()}}
                           .dump()
                    << "\n";
      sink.finish();
      return kExitVerifyFail;
    }
  }

  OneForm form = superposeForm(y1, y2);
  json out;
  out["f_form"] = {{"dr", print(fold(form.a))}, {"dz", print(fold(form.b))}};
  int exitCode = kExitOk;

  if (!fText.empty()) {
    Expr f = parseExprArg(fText, "--f");
    ExprTerms dfr, dfz;
    dfr.add(diff(f, Coord::R)).add(-form.a);
    dfz.add(diff(f, Coord::Z)).add(-form.b);
    IdentityOptions io;
    io.nPoints = cfg.nPoints;
    io.seed = cfg.rngSeed;
    io.tolerance = cfg.tolerance;
    auto checkR = identityReport("primitive_dr", dfr, p, dom, io);
    auto checkZ = identityReport("primitive_dz", dfz, p, dom, io);
    if (!checkR.pass() || !checkZ.pass()) {
      std::cerr << "superpose: --f is not a primitive of the pair's form\n";
      Sink sink(cfg.outPath);
      sink.stream() << json{{"error", "f rejected"},
                            {"dr_check", checkR.toJson()},
                            {"dz_check", checkZ.toJson()}}
                           .dump()
                    << "\n";
      sink.finish();
      return kExitVerifyFail;
    }
    SuperposeResult res = superposePotential(u, y1, y2, f);
    auto swap = swapCheck(u, y1, y2, f, p, dom, io);
    auto res1 = residualReport(res.newPotential, res.sol1, p, dom, cfg.nPoints, cfg.rngSeed,
                               cfg.tolerance);
    auto res2 = residualReport(res.newPotential, res.sol2, p, dom, cfg.nPoints, cfg.rngSeed,
                               cfg.tolerance);
    out["record"] = res.record.toJson();
    out["f_closed"] = print(fold(f));
    out["potential"] = print(fold(res.newPotential));
    out["solutions"] = {print(fold(res.sol1)), print(fold(res.sol2))};
    out["solution_residuals"] = {res1.toJson(), res2.toJson()};
    out["swap_check"] = swap.toJson();
    bool swapOk = swap.nonFiniteCount == 0 && swap.maxScaledResidual < 1e-10;
    if (!res1.pass() || !res2.pass() || !swapOk) exitCode = kExitVerifyFail;
  } else {
    // No closed primitive given: quadrature route on the grid.
    double K = p.find("K").value_or(Defaults::K);
    auto [nR, nZ] = cfg.grid();
    Point anchor{0.5 * (dom.rMin + dom.rMax), 0.5 * (dom.zMin + dom.zMax)};
    Field f = primitiveField(form, p, dom, nR, nZ, anchor, K);

    Expr y1r = diff(y1, Coord::R), y1z = diff(y1, Coord::Z);
    Expr y2r = diff(y2, Coord::R), y2z = diff(y2, Coord::Z);
    Expr r = rvar();
    Expr n1 = num(2) * y2z * (num(2) * r * y1r + y1);
    Expr n2 = -(num(2) * y1z * (num(2) * r * y2r + y2));
    Expr n3 = num(2) * pow(r, num(2)) *
              (pow(y2r * y1 - y2 * y1r, num(2)) + pow(y2z * y1 - y2 * y1z, num(2)));
    Field pot(dom, nR, nZ, anchor, 0.0);
    Field sol1(dom, nR, nZ, anchor, 0.0);
    Field sol2(dom, nR, nZ, anchor, 0.0);
    double swapMax = 0.0;
    for (int i = 0; i < nR; ++i) {
      for (int j = 0; j < nZ; ++j) {
        if (f.flagged(i, j)) {
          pot.flag(i, j);
          sol1.flag(i, j);
          sol2.flag(i, j);
          continue;
        }
        Point pt{f.rAt(i), f.zAt(j)};
        double fv = f.value(i, j);
        if (fv == 0.0) {
          pot.flag(i, j);
          sol1.flag(i, j);
          sol2.flag(i, j);
          continue;
        }
        try {
          double uv = eval(u, p, pt);
          double a1 = eval(n1, p, pt);
          double a2 = eval(n2, p, pt);
          double a3 = eval(n3, p, pt);
          double potV = uv + a1 / fv + a2 / fv + a3 / (fv * fv);
          // Swapping the pair negates both the form and its primitive.
          double potSwapped = uv + (-a2) / (-fv) + (-a1) / (-fv) + a3 / (fv * fv);
          swapMax = std::max(swapMax, std::fabs(potV - potSwapped));
          pot.setOffset(i, j, potV);
          sol1.setOffset(i, j, eval(y1, p, pt) / fv);
          sol2.setOffset(i, j, eval(y2, p, pt) / fv);
        } catch (const EvalError&) {
          pot.flag(i, j);
          sol1.flag(i, j);
          sol2.flag(i, j);
        }
      }
    }
    std::string base = fieldOut.empty() ? "superpose" : fieldOut;
    writeFieldCsv(f, base + "_f.csv");
    writeFieldCsv(pot, base + "_potential.csv");
    writeFieldCsv(sol1, base + "_sol1.csv");
    writeFieldCsv(sol2, base + "_sol2.csv");
    auto fd1 = fdResidualFieldGrid(pot, sol1);
    auto fd2 = fdResidualFieldGrid(pot, sol2);
    out["f_file"] = base + "_f.csv";
    out["potential_file"] = base + "_potential.csv";
    out["solution_files"] = {base + "_sol1.csv", base + "_sol2.csv"};
    out["fd_residuals"] = {fd1.toJson(), fd2.toJson()};
    out["swap_max_abs_difference"] = swapMax;
    out["anchor_value_K"] = K;
    if (!fd1.pass() || !fd2.pass() || !(swapMax < 1e-10)) exitCode = kExitVerifyFail;
  }
  Sink sink(cfg.outPath);
  sink.stream() << out.dump() << "\n";
  sink.finish();
  return exitCode;
}

int cmdQuadrature(const CommonConfig& cfg, const std::string& aText, const std::string& bText,
                  const std::vector<double>& anchorArg, double anchorValue,
                  const std::vector<double>& targetArg, const std::string& pathName, int panels,
                  int nodes, bool makeField, const std::string& fieldOut) {
  Expr a = parseExprArg(aText, "--a");
  Expr b = parseExprArg(bText, "--b");
  OneForm form{a, b};
  Params p = cfg.params();
  Domain dom = cfg.domain();
  if (anchorArg.size() != 2) throw CLI::ValidationError("--anchor expects r,z");
  Point anchor{anchorArg[0], anchorArg[1]};
  PathSpec path;
  if (pathName == "r-then-z")
    path.variant = PathVariant::RThenZ;
  else if (pathName == "z-then-r")
    path.variant = PathVariant::ZThenR;
  else if (pathName == "midpoint")
    path.variant = PathVariant::MidpointPolyline;
  else
    throw CLI::ValidationError("--path must be r-then-z, z-then-r, or midpoint");
  path.panelsPerSegment = panels;
  path.gaussNodes = nodes;
  try {
    path.validate();
  } catch (const std::invalid_argument& e) {
    throw CLI::ValidationError(e.what());
  }

  IdentityOptions io;
  io.nPoints = cfg.nPoints;
  io.seed = cfg.rngSeed;
  io.tolerance = cfg.tolerance;
  ExprTerms closed;
  closed.add(diff(form.a, Coord::Z)).add(-diff(form.b, Coord::R));
  auto compat = identityReport("compatibility", closed, p, dom, io);
  json out;
  out["compatibility"] = compat.toJson();
  if (!compat.pass()) {
    std::cerr << "quadrature: the form is not closed on this domain\n";
    Sink sink(cfg.outPath);
    out["error"] = "form not closed";
    sink.stream() << out.dump() << "\n";
    sink.finish();
    return kExitVerifyFail;
  }

  if (makeField) {
    auto [nR, nZ] = cfg.grid();
    Field f = primitiveField(form, p, dom, nR, nZ, anchor, anchorValue, path);
    std::string pathOut = fieldOut.empty() ? "primitive.csv" : fieldOut;
    writeFieldCsv(f, pathOut);
    out["field_file"] = pathOut;
    out["flagged_nodes"] = f.flaggedCount();
  } else {
    if (targetArg.size() != 2) throw CLI::ValidationError("--target expects r,z");
    Point target{targetArg[0], targetArg[1]};
    double value = integrateForm(form, p, dom, anchor, anchorValue, target, path);
    PathSpec alt = path;
    alt.variant = path.variant == PathVariant::RThenZ ? PathVariant::ZThenR
                                                      : PathVariant::RThenZ;
    double altValue = integrateForm(form, p, dom, anchor, anchorValue, target, alt);
    out["value"] = value;
    out["alternate_path_value"] = altValue;
    out["path_difference"] = std::fabs(value - altValue);
  }
  Sink sink(cfg.outPath);
  sink.stream() << out.dump() << "\n";
  sink.finish();
  return kExitOk;
}

int cmdScan(const CommonConfig& cfg, const std::string& exprText) {
  Expr e = parseExprArg(exprText, "--expr");
  auto [nR, nZ] = cfg.grid(301, 301);
  auto rep = singularityScan(e, cfg.params(), cfg.domain(), nR, nZ, exprText);
  Sink sink(cfg.outPath);
  sink.stream() << rep.toJson().dump() << "\n";
  sink.finish();
  return kExitOk;
}

int cmdExport(const CommonConfig& cfg, const std::string& exprText,
              const std::string& matrixOut) {
  Expr e = parseExprArg(exprText, "--expr");
  auto [nR, nZ] = cfg.grid();
  Field f = Field::sample(e, cfg.params(), cfg.domain(), nR, nZ);
  Sink sink(cfg.outPath);
  if (cfg.format == "csv")
    f.writeCsv(sink.stream());
  else {
    json rs = json::array(), zs = json::array(), rows = json::array();
    for (int i = 0; i < nR; ++i) rs.push_back(f.rAt(i));
    for (int j = 0; j < nZ; ++j) zs.push_back(f.zAt(j));
    for (int i = 0; i < nR; ++i) {
      json row = json::array();
      for (int j = 0; j < nZ; ++j) {
        if (f.flagged(i, j))
          row.push_back(nullptr);
        else
          row.push_back(f.value(i, j));
      }
      rows.push_back(std::move(row));
    }
    json out = {{"n_r", nR}, {"n_z", nZ}, {"r", rs}, {"z", zs}, {"values", rows}};
    sink.stream() << out.dump() << "\n";
  }
  sink.finish();
  if (!matrixOut.empty()) {
    std::ofstream os(matrixOut, std::ios::binary);
    if (!os) throw std::ios_base::failure("cannot open matrix file '" + matrixOut + "'");
    f.writeGnuplotMatrix(os);
    os.flush();
    if (!os) throw std::ios_base::failure("write failure on matrix file");
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Transformation toolkit for the axially symmetric Schrodinger/Helmholtz equation"};
  app.require_subcommand(1);
  app.set_config("--config");

  CommonConfig cfg;

  auto* verify = app.add_subcommand("verify-catalog", "Run the built-in verification suite");
  addCommonOptions(verify, cfg);

  auto* transform = app.add_subcommand("transform", "Transform a seed solution");
  addCommonOptions(transform, cfg, /*seedIsRng=*/false);
  std::string mode, seedText, uText = "0", fieldOut;
  transform->add_option("--mode", mode, "moutard or darboux")
      ->required()
      ->check(CLI::IsMember({"moutard", "darboux"}));
  transform->add_option("--seed", seedText, "Seed solution expression")->required();
  transform->add_option("--u", uText, "Potential the seed solves (default 0)");
  transform->add_option("--field-out", fieldOut, "CSV path for a quadrature-built solution");

  auto* superpose = app.add_subcommand("superpose", "Twofold superposition of two solutions");
  addCommonOptions(superpose, cfg);
  std::string y1Text, y2Text, uText2 = "0", fText, fieldOut2;
  superpose->add_option("--y1", y1Text, "First solution")->required();
  superpose->add_option("--y2", y2Text, "Second solution")->required();
  superpose->add_option("--u", uText2, "Potential both solutions solve (default 0)");
  superpose->add_option("--f", fText, "Closed-form primitive of the pair's form (optional)");
  superpose->add_option("--field-out", fieldOut2, "Base path for emitted CSV fields");

  auto* quadrature = app.add_subcommand("quadrature", "Integrate a closed one-form");
  addCommonOptions(quadrature, cfg);
  std::string aText, bText, pathName = "r-then-z", fieldOut3;
  std::vector<double> anchorArg, targetArg;
  double anchorValue = 0.0;
  bool makeField = false;
  int panels = 0, nodes = 8;
  quadrature->add_option("--a", aText, "dr component")->required();
  quadrature->add_option("--b", bText, "dz component")->required();
  quadrature->add_option("--anchor", anchorArg, "Anchor point r,z")->delimiter(',')->required();
  quadrature->add_option("--anchor-value", anchorValue, "Primitive value at the anchor");
  quadrature->add_option("--target", targetArg, "Target point r,z")->delimiter(',');
  quadrature->add_option("--path", pathName, "r-then-z, z-then-r, or midpoint");
  quadrature->add_option("--panels", panels, "Panels per segment (0 = auto)");
  quadrature->add_option("--nodes", nodes, "Gauss nodes per panel (4 or 8)");
  quadrature->add_flag("--field", makeField, "Fill a grid primitive instead of one target");
  quadrature->add_option("--field-out", fieldOut3, "CSV path for the grid primitive");

  auto* scan = app.add_subcommand("scan", "Sign-change and singularity scan of an expression");
  addCommonOptions(scan, cfg);
  std::string scanExpr;
  scan->add_option("--expr", scanExpr, "Expression to scan")->required();

  auto* exportCmd = app.add_subcommand("export", "Sample an expression onto a grid and export");
  addCommonOptions(exportCmd, cfg);
  std::string exportExpr, matrixOut;
  exportCmd->add_option("--expr", exportExpr, "Expression to sample")->required();
  exportCmd->add_option("--matrix-out", matrixOut, "Also write a gnuplot matrix file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);  // help text, exit 0
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (verify->parsed()) return cmdVerifyCatalog(cfg);
    if (transform->parsed()) return cmdTransform(cfg, mode, seedText, uText, fieldOut);
    if (superpose->parsed()) return cmdSuperpose(cfg, y1Text, y2Text, uText2, fText, fieldOut2);
    if (quadrature->parsed())
      return cmdQuadrature(cfg, aText, bText, anchorArg, anchorValue, targetArg, pathName,
                           panels, nodes, makeField, fieldOut3);
    if (scan->parsed()) return cmdScan(cfg, scanExpr);
    if (exportCmd->parsed()) return cmdExport(cfg, exportExpr, matrixOut);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const QuadratureError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const EvalError& e) {
    std::cerr << "numerical failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::ios_base::failure& e) {
    std::cerr << "I/O failure: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "failure: " << e.what() << "\n";
    return kExitNumeric;
  }
  return kExitUsage;
}
