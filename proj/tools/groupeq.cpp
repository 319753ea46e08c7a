#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "groupeq/abelian.hpp"
#include "groupeq/linclass.hpp"
#include "groupeq/padic.hpp"
#include "groupeq/pcgroup.hpp"
#include "groupeq/system.hpp"
#include "groupeq/witness.hpp"

namespace {

using namespace groupeq;

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitBudget = 3;

enum class Format { Human, Tsv, Kv };

Format parse_format(const std::string& f) {
  if (f == "human") return Format::Human;
  if (f == "tsv") return Format::Tsv;
  if (f == "kv") return Format::Kv;
  throw CLI::ValidationError("--format", "expected human, tsv or kv");
}

int run_classify(const std::string& system_path, const std::string& matrix_path,
                 unsigned long n, Format format) {
  Classification cls;
  bool structural = false;
  bool generated = false;
  if (!matrix_path.empty()) {
    std::ifstream in(matrix_path);
    if (!in) throw std::invalid_argument("cannot open " + matrix_path);
    ExponentMatrix M = ExponentMatrix::parse(in);
    if (M.rows() == 0) throw std::invalid_argument("matrix file has no rows");
    cls = classify(M);
    structural = structural_band_shape(M) != BandShape::None;
  } else {
    SystemSource sys = parse_system_file(system_path);
    generated = sys.is_generated();
    auto max = sys.max_equations();
    if (max && *max == 0)
      throw std::invalid_argument("system file declares no equations");
    unsigned long count = n > 0 ? n : (max ? *max : 0);
    if (count == 0)
      throw std::invalid_argument("generated system needs --n <truncation>");
    auto data = exponent_matrix(sys, count);
    cls = classify(data.matrix);
    structural = structural_band_shape(data.matrix) != BandShape::None;
  }

  if (format == Format::Kv || format == Format::Tsv) {
    std::cout << cls.report();
    std::cout << "structural_band: " << (structural ? "yes" : "no") << '\n';
  } else {
    std::string verdict = cls.unimodular
                              ? (structural ? "unimodular (structural)" : "unimodular")
                              : (cls.nonsingular ? "nonsingular, not unimodular"
                                                 : "not nonsingular");
    std::cout << verdict << '\n';
    std::cout << cls.report();
    if (generated && !structural)
      std::cout << "note: verdict covers this truncation only\n";
  }
  return cls.unimodular ? kExitOk : kExitNegative;
}

int run_solve(const std::string& system_path, const std::string& group_path,
              unsigned long budget, unsigned jobs, bool force_brute) {
  SystemSource sys = parse_system_file(system_path);
  auto max = sys.max_equations();
  if (!max)
    throw std::invalid_argument("solve needs a finite system (or a truncation)");
  if (*max == 0) throw std::invalid_argument("system file declares no equations");
  auto eqs = sys.truncate(*max);

  std::ifstream gin(group_path);
  if (!gin) throw std::invalid_argument("cannot open " + group_path);
  ConcreteGroupFile gf = parse_group_file(gin);

  if (gf.abelian) {
    auto sols = solve_over_finite_abelian(eqs, *gf.abelian, gf.ab_coeffs);
    if (sols.empty) {
      std::cout << "UNSAT: " << sols.obstruction << '\n';
      return kExitNegative;
    }
    for (std::size_t j = 0; j < sols.variables.size(); ++j) {
      std::cout << sols.variables[j].str() << " = (";
      const auto& e = sols.particular[j];
      for (std::size_t k = 0; k < e.size(); ++k)
        std::cout << (k ? ", " : "") << e[k].get_str();
      std::cout << ")\n";
    }
    std::cout << "free_generators: " << sols.hom_generators.size() << '\n';
    return kExitOk;
  }

  const PcGroup& G = *gf.pc;
  auto data = exponent_matrix(sys, *max);
  bool square = data.matrix.rows() == data.matrix.cols();
  bool unimod = square && classify(data.matrix).unimodular;

  if (unimod && !force_brute) {
    auto assign = lift_solve(eqs, G, gf.pc_coeffs);
    Int total = 1;
    for (std::size_t i = 0; i < assign.size(); ++i) total *= G.order();
    if (total <= budget) {
      auto brute = brute_force_solve(eqs, G, gf.pc_coeffs, budget, jobs);
      if (brute.size() != 1 || brute[0] != assign)
        throw std::logic_error("lift_solve disagrees with brute force");
    }
    for (const auto& [sym, el] : assign)
      std::cout << sym.str() << " = " << G.element_str(el) << '\n';
    return kExitOk;
  }

  auto found = brute_force_solve(eqs, G, gf.pc_coeffs, budget, jobs);
  if (found.empty()) {
    std::cout << "UNSAT: exhausted all assignments\n";
    return kExitNegative;
  }
  std::cout << "solutions: " << found.size() << '\n';
  for (const auto& [sym, el] : found.front())
    std::cout << sym.str() << " = " << G.element_str(el) << '\n';
  if (found.size() > 1) std::cout << "(first solution shown)\n";
  return kExitOk;
}

int run_criterion(const std::string& group_path, const std::string& theorem) {
  std::ifstream in(group_path);
  if (!in) throw std::invalid_argument("cannot open " + group_path);

  CriterionVerdict v;
  if (theorem == "thm2-torsionfree") {
    // torsion-free descriptors reduce to a divisibility flag
    std::string line, flag;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::istringstream ls(line);
      std::string head;
      ls >> head;
      if (head == "torsionfree") {
        ls >> flag;
        break;
      }
    }
    if (flag != "divisible=yes" && flag != "divisible=no")
      throw std::invalid_argument(
          "thm2-torsionfree needs a line 'torsionfree divisible=yes|no'");
    v = theorem2_criterion(flag == "divisible=yes");
  } else {
    PeriodicAbelianDescriptor G = parse_descriptor_file(in);
    if (theorem == "thm1") v = theorem1_criterion(G);
    else if (theorem == "abelian-M25") v = abelian_reduced_criterion(G);
    else throw std::invalid_argument("unknown theorem: " + theorem);
  }
  std::cout << v.str() << '\n';
  return v.closed ? kExitOk : kExitNegative;
}

int run_witness(const std::string& family, unsigned long p, unsigned long m,
                unsigned long n_max, const std::string& out_system,
                const std::string& out_table, bool verify) {
  std::vector<WitnessReport> reports;
  if (family == "ulmbad") {
    KSequence ks = KSequence::default_rule(Int(p), m);
    SystemSource sys = ulmbad_system(ks);
    if (!out_system.empty()) {
      std::ofstream out(out_system);
      write_system_file(out, sys.symbols(), sys.truncate(n_max));
    }
    auto cls = classify_truncations(sys, n_max);
    for (const auto& tc : cls)
      if (!tc.classification.unimodular)
        throw std::logic_error("ulmbad truncation not unimodular");
    if (verify) reports = verify_truncations_ulmbad(ks, n_max);
  } else if (family == "crossprime") {
    std::vector<std::pair<Int, unsigned long>> data;
    auto primes = first_primes(n_max);
    for (const Int& q : primes) data.emplace_back(q, m);
    SystemSource sys = crossprime_system(data);
    if (!out_system.empty()) {
      std::ofstream out(out_system);
      write_system_file(out, sys.symbols(), sys.truncate(n_max));
    }
    auto cls = classify_truncations(sys, n_max);
    for (const auto& tc : cls)
      if (!tc.classification.unimodular)
        throw std::logic_error("crossprime truncation not unimodular");
    if (verify) reports = verify_truncations_crossprime(data, n_max);
  } else {
    throw std::invalid_argument("family must be ulmbad or crossprime");
  }

  std::cout << "all " << n_max << " truncations unimodular\n";
  if (verify) {
    std::ostringstream table;
    write_growth_table(table, reports);
    std::cout << table.str();
    if (!out_table.empty()) {
      std::ofstream out(out_table);
      write_growth_table(out, reports);
    }
    for (const auto& r : reports)
      if (!r.ok) return kExitNegative;
  }
  return kExitOk;
}

int run_padic(unsigned long p, unsigned long N, const std::string& rule_text,
              unsigned long max_period, unsigned long min_repeats,
              const std::string& bound_text) {
  DigitRule rule;
  if (rule_text == "paper-aperiodic") {
    rule = DigitRule::aperiodic_triangular();
  } else if (rule_text.rfind("constant:", 0) == 0) {
    rule = DigitRule::constant(Int(rule_text.substr(9)));
  } else if (rule_text.rfind("periodic:", 0) == 0) {
    std::vector<Int> pattern;
    std::string body = rule_text.substr(9), cur;
    for (char c : body + ",") {
      if (c == ',') {
        if (!cur.empty()) pattern.emplace_back(cur);
        cur.clear();
      } else {
        cur += c;
      }
    }
    rule = DigitRule::periodic(std::move(pattern));
  } else {
    throw std::invalid_argument(
        "rule must be paper-aperiodic, constant:<d> or periodic:<d1,d2,...>");
  }

  auto series = solve_series(rule, Int(p), N);
  std::cout << "digits: " << series.x1.digit_string() << '\n';
  std::cout << "recurrence_verified: "
            << (series.recurrence_verified ? "yes" : "no") << '\n';

  auto verdict = periodicity_verdict(series.x1, max_period, min_repeats);
  std::cout << "periodicity: " << verdict.text << '\n';

  Int bound = bound_text.empty() ? Int(0) : Int(bound_text);
  if (bound == 0) {
    // default: quarter precision. The maximal sound bound sqrt(p^N / 2)
    // nearly always yields a spurious boundary fraction.
    bound = int_pow(Int(p), N / 4 == 0 ? 1 : N / 4);
  }
  auto rec = rational_reconstruct(series.x1, bound);
  if (rec) {
    std::cout << "rational: " << rec->first.get_str() << "/"
              << rec->second.get_str() << '\n';
  } else {
    std::cout << "rational: none within bound " << bound.get_str() << '\n';
  }

  bool periodic = verdict.kind == PeriodicityVerdict::Kind::Periodic;
  return periodic || rec ? kExitOk : kExitNegative;
}

int run_groupinfo(const std::string& group_path) {
  std::ifstream in(group_path);
  if (!in) throw std::invalid_argument("cannot open " + group_path);
  ConcreteGroupFile gf = parse_group_file(in);
  if (gf.abelian) {
    std::cout << "kind: abelian\norder: " << gf.abelian->size().get_str()
              << "\ncomponents:";
    for (const Int& m : gf.abelian->orders()) std::cout << ' ' << m.get_str();
    std::cout << "\nnilpotency_class: 1\n";
    return kExitOk;
  }
  const PcGroup& G = *gf.pc;
  std::cout << "kind: pc\norder: " << G.order().get_str() << '\n';
  auto upper = central_series(G, SeriesKind::Upper);
  auto lower = central_series(G, SeriesKind::Lower);
  std::cout << "nilpotency_class: " << upper.nilpotency_class << '\n';
  std::cout << "upper_series_orders:";
  for (const auto& sub : upper.chain) std::cout << ' ' << sub.size();
  std::cout << "\nlower_series_orders:";
  for (const auto& sub : lower.chain) std::cout << ' ' << sub.size();
  std::cout << '\n';
  if (upper.nilpotency_class != lower.nilpotency_class)
    throw std::logic_error("central series disagree on the class");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"equations over groups: classification, solving, criteria"};
  app.require_subcommand(1);

  std::string system_path, matrix_path, group_path, format_text = "human";
  unsigned long trunc_n = 0;

  auto* classify_cmd = app.add_subcommand("classify",
      "classify a system as nonsingular / p-nonsingular / unimodular");
  classify_cmd->add_option("--system", system_path, "system file");
  classify_cmd->add_option("--matrix", matrix_path, "exponent matrix file");
  classify_cmd->add_option("--n", trunc_n, "truncation for generated systems");
  classify_cmd->add_option("--format", format_text, "human|tsv|kv");

  std::string solve_group;
  unsigned long solve_budget = 2'000'000;
  unsigned jobs = 1;
  bool force_brute = false;
  auto* solve_cmd = app.add_subcommand("solve", "solve a finite system in a group");
  solve_cmd->add_option("--system", system_path, "system file")->required();
  solve_cmd->add_option("--group", solve_group, "group file")->required();
  solve_cmd->add_option("--budget", solve_budget, "brute force budget");
  solve_cmd->add_option("--jobs", jobs, "parallel brute-force workers");
  solve_cmd->add_flag("--brute", force_brute, "skip the lifting solver");

  std::string theorem = "thm1";
  auto* crit_cmd = app.add_subcommand("criterion",
      "decide solution-closedness criteria for a group descriptor");
  crit_cmd->add_option("--group", group_path, "descriptor file")->required();
  crit_cmd->add_option("--theorem", theorem, "thm1|abelian-M25|thm2-torsionfree");

  std::string family = "ulmbad", out_system, out_table;
  unsigned long wp = 2, wm = 1, wn = 4;
  bool verify = false;
  auto* wit_cmd = app.add_subcommand("witness",
      "emit and verify the non-solvable unimodular witness systems");
  wit_cmd->add_option("--family", family, "ulmbad|crossprime");
  wit_cmd->add_option("-p", wp, "prime (ulmbad)");
  wit_cmd->add_option("-m", wm, "period exponent");
  wit_cmd->add_option("--n-max", wn, "largest truncation");
  wit_cmd->add_option("--out-system", out_system, "write the truncated system");
  wit_cmd->add_option("--out-table", out_table, "write the growth table (tsv)");
  wit_cmd->add_flag("--verify", verify, "run the order-growth verification");

  unsigned long pp = 2, pN = 64, max_period = 8, min_repeats = 2;
  std::string rule_text = "paper-aperiodic", bound_text;
  auto* padic_cmd = app.add_subcommand("padic",
      "truncated p-adic series, periodicity and rational reconstruction");
  padic_cmd->add_option("-p", pp, "prime");
  padic_cmd->add_option("-N", pN, "precision (digits)");
  padic_cmd->add_option("--rule", rule_text,
                        "paper-aperiodic|constant:<d>|periodic:<d1,d2,...>");
  padic_cmd->add_option("--max-period", max_period, "periodicity scan bound");
  padic_cmd->add_option("--min-repeats", min_repeats, "periods needed to confirm");
  padic_cmd->add_option("--reconstruct-bound", bound_text, "numerator/denominator bound");

  auto* info_cmd = app.add_subcommand("groupinfo", "order and central series");
  info_cmd->add_option("--group", group_path, "group file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (classify_cmd->parsed()) {
      if (system_path.empty() == matrix_path.empty())
        throw std::invalid_argument("classify needs exactly one of --system/--matrix");
      return run_classify(system_path, matrix_path, trunc_n,
                          parse_format(format_text));
    }
    if (solve_cmd->parsed())
      return run_solve(system_path, solve_group, solve_budget, jobs, force_brute);
    if (crit_cmd->parsed()) return run_criterion(group_path, theorem);
    if (wit_cmd->parsed())
      return run_witness(family, wp, wm, wn, out_system, out_table, verify);
    if (padic_cmd->parsed())
      return run_padic(pp, pN, rule_text, max_period, min_repeats, bound_text);
    if (info_cmd->parsed()) return run_groupinfo(group_path);
    return kExitUsage;
  } catch (const budget_error& e) {
    std::cerr << "budget exceeded: " << e.what() << '\n';
    return kExitBudget;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}
