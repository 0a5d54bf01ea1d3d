#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "heavenly/checks.hpp"
#include "heavenly/expression.hpp"
#include "heavenly/report.hpp"

namespace {

void add_common(CLI::App* cmd, heavenly::checks::Options& opt, std::string& out_path) {
  cmd->add_option("--grid", opt.grid, "grid size per axis");
  cmd->add_option("--seed", opt.seed, "rng seed");
  cmd->add_option("--out", out_path, "write the json report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification toolkit for the dispersionless hierarchy lab"};
  app.require_subcommand(0, 1);

  bool show_defaults = false;
  app.add_flag("--show-defaults", show_defaults, "print the versioned defaults table and exit");

  heavenly::checks::Options opt;
  std::string out_path;
  std::string suite;
  int p_value = 0;

  CLI::App* verify = app.add_subcommand("verify", "run a module verification suite");
  verify->add_option("suite", suite, "grid, loop, or poisson")->required();
  verify->add_option("--case", opt.case_id, "mp or plebanski");
  add_common(verify, opt, out_path);

  CLI::App* bracket =
      app.add_subcommand("bracket-table", "compare bracket kernels against their closed forms");
  bracket->add_option("--case", opt.case_id, "mp or plebanski");
  bracket->add_option("--p", p_value, "restrict to one seed power");
  add_common(bracket, opt, out_path);

  CLI::App* lax = app.add_subcommand("lax-check", "compatibility residual of a manufactured field");
  lax->add_option("--case", opt.case_id, "mp or plebanski");
  lax->add_option("--field", opt.field, "expression for u; defaults per case");
  lax->add_option("--y0", opt.y0, "slice coordinate");
  lax->add_option("--t0", opt.t0, "slice coordinate");
  add_common(lax, opt, out_path);

  CLI::App* evolve = app.add_subcommand("evolve", "integrate a reduced hierarchy flow");
  evolve->add_option("--flow", opt.flow, "mp-y or mp-t");
  evolve->add_option("--init", opt.init, "expression for the initial slope v(x)");
  evolve->add_option("--dt", opt.dt, "step size");
  evolve->add_option("--T", opt.T, "horizon");
  evolve->add_option("--csv", opt.csv, "write the trajectory table here");
  evolve->add_flag("--dealias", opt.dealias, "2/3-rule filter on the rhs");
  add_common(evolve, opt, out_path);

  CLI::App* rec = app.add_subcommand("reconstruct", "hamiltonian reconstruction checks");
  add_common(rec, opt, out_path);

  CLI::App* cas = app.add_subcommand("casimir", "coadjoint defect orders of the casimir gradient");
  cas->add_option("--case", opt.case_id, "mp or plebanski");
  cas->add_flag("--on-shell", opt.on_shell, "impose u_y = -(3/2) u_x^2 (mp only)");
  add_common(cas, opt, out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (show_defaults) {
    std::cout << heavenly::checks::defaults_table().dump(2) << "\n";
    return 0;
  }
  if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  }
  if (bracket->count("--p") > 0) opt.p = p_value;

  std::string command;
  std::vector<heavenly::CheckResult> checks;
  try {
    if (verify->parsed()) {
      command = "verify " + suite;
      checks = heavenly::checks::verify_suite(suite, opt);
    } else if (bracket->parsed()) {
      command = "bracket-table";
      checks = heavenly::checks::bracket_table(opt);
    } else if (lax->parsed()) {
      command = "lax-check";
      checks = heavenly::checks::lax_check(opt);
    } else if (evolve->parsed()) {
      command = "evolve";
      checks = heavenly::checks::evolve_flow(opt);
    } else if (rec->parsed()) {
      command = "reconstruct";
      checks = heavenly::checks::reconstruct(opt);
    } else if (cas->parsed()) {
      command = "casimir";
      checks = heavenly::checks::casimir(opt);
    }
  } catch (const heavenly::checks::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const heavenly::SyntaxError& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const heavenly::UnknownIdentifier& e) {
    std::cerr << "expression error: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  heavenly::VerificationReport report{command, checks};
  try {
    heavenly::write_report(report, out_path);
  } catch (const std::exception& e) {
    std::cerr << e.what() << "\n";
    return 2;
  }
  return heavenly::all_pass(checks) ? 0 : 1;
}
