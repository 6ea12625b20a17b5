#include "verify/claims.hpp"

#include "halo/constructions.hpp"
#include "halo/errors.hpp"
#include "halo/io.hpp"
#include "halo/layers.hpp"
#include "halo/mamu.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>

using namespace halo;
using verify::Verdict;

namespace {

enum Exit { kPass = 0, kFail = 1, kInconclusive = 2, kMalformed = 3 };

struct Output {
  bool human = false;
  std::string out;  // empty: stdout

  void emit(const Json& j, const std::string& human_text) const {
    const std::string s = human ? human_text : j.dump();
    if (out.empty()) {
      std::cout << s << '\n';
    } else {
      std::ofstream f(out);
      if (!f) throw ParseError("cannot write " + out);
      f << (human ? human_text : j.dump(2)) << '\n';
    }
  }
};

std::uint64_t default_seed() {
  if (const char* s = std::getenv("HALO_SEED")) {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(s, &end, 10);
    if (end != s && *end == '\0') return v;
    std::cerr << "ignoring malformed HALO_SEED=" << s << '\n';
  }
  return SearchBudget{}.seed;
}

std::string tuple_text(const std::vector<std::size_t>& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i] + 1);
  return s + ")";
}

std::string psd_text(const PsdVerdict& v) {
  if (v.psd()) return "PSD";
  return "NotPSD (witness value " + to_string(*v.value) + ")";
}

int cmd_verify_paper(const verify::ClaimOptions& opts, const std::vector<std::string>& only,
                     const std::string& out, bool human) {
  std::ofstream file;
  if (!out.empty()) {
    file.open(out, std::ios::app);
    if (!file) throw ParseError("cannot write " + out);
  }
  std::ostream& os = out.empty() ? std::cout : file;
  int fails = 0;
  int inconclusive = 0;
  for (const auto& c : verify::claims()) {
    if (!only.empty() && std::find(only.begin(), only.end(), c.id) == only.end()) continue;
    const verify::ClaimReport r = verify::run_claim(c, opts);
    if (human)
      os << to_string(r.verdict) << "  " << r.id << "  " << r.runtime_ms << " ms" << (r.detail.empty() ? "" : "  " + r.detail)
         << std::endl;
    else
      os << verify::to_json(r).dump() << std::endl;
    fails += r.verdict == Verdict::Fail;
    inconclusive += r.verdict == Verdict::Inconclusive;
  }
  if (fails) return kFail;
  return inconclusive ? kInconclusive : kPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact checks for tensor-stable positivity, infinitesimal perturbations and MPO reductions"};
  app.require_subcommand(1);

  Output output;
  std::size_t max_dim = kDefaultMaxDim;
  bool json_flag = false;
  auto* human_opt = app.add_flag("--human", output.human, "Human-readable output");
  app.add_flag("--json", json_flag, "JSON output (default)")->excludes(human_opt);
  app.add_option("--max-dim", max_dim, "Cap on dense matrix dimensions")->capture_default_str();

  SearchBudget budget;
  budget.seed = default_seed();
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--seed", budget.seed, "Search seed (default from HALO_SEED)");
    sub->add_option("--restarts,--budget", budget.restarts, "Search restarts")->capture_default_str();
    sub->add_option("--iterations", budget.iterations, "Iterations per restart")->capture_default_str();
  };

  // verify-paper
  auto* vp = app.add_subcommand("verify-paper", "Run every acceptance claim, one JSON line each");
  std::size_t vp_n_max = 3;
  std::vector<std::string> vp_only;
  std::string vp_out;
  add_budget(vp);
  vp->add_option("--n-max", vp_n_max, "Largest n for the reduction identity")->capture_default_str();
  vp->add_option("--only", vp_only, "Run only these claim ids");
  vp->add_option("--out", vp_out, "Append the report stream to this file");

  // psd
  auto* psd = app.add_subcommand("psd", "Exact psd decision for a matrix file");
  std::string psd_file;
  bool psd_pt = false;
  psd->add_option("--file", psd_file, "Matrix or Choi JSON")->required();
  psd->add_flag("--partial-transpose", psd_pt, "Test the partial transpose on sqrt(n) x sqrt(n)");

  // choi
  auto* choi = app.add_subcommand("choi", "Choi matrix of a map with CP / coCP verdicts");
  std::string choi_map;
  choi->add_option("--map", choi_map, "Map JSON")->required();
  choi->add_option("--out", output.out, "Write the Choi matrix here");

  // search
  auto* search = app.add_subcommand("search", "Seeded search for a violation of n-tensor-stable positivity");
  std::string search_map;
  std::size_t search_n = 1;
  add_budget(search);
  search->add_option("--map", search_map, "Map JSON")->required();
  search->add_option("--n", search_n, "Tensor power")->capture_default_str();

  // construct
  auto* construct = app.add_subcommand("construct", "Build the fixed constructions");
  construct->require_subcommand(1);
  auto* mu16 = construct->add_subcommand("mu16", "Rank-deficient PPT Choi matrix");
  std::size_t d1 = 3, d2 = 3;
  mu16->add_option("--d1", d1)->capture_default_str();
  mu16->add_option("--d2", d2)->capture_default_str();
  mu16->add_option("--out", output.out, "Write the matrix here");
  auto* rho = construct->add_subcommand("rho-eta", "Perturb, filter, twirl and normalize");
  std::string eta_text = "e";
  rho->add_option("--eta", eta_text, "Expression in e, e.g. 1/10 or e")->capture_default_str();

  // mamu
  auto* mamu = app.add_subcommand("mamu", "MaMu tensor loops");
  mamu->require_subcommand(1);
  auto* mamu_decide = mamu->add_subcommand("decide", "Exact psd check of P^{(x)n}(chi_n) for n <= n-max");
  std::string mamu_map;
  std::size_t n_max = 4;
  mamu_decide->add_option("--map", mamu_map, "Map JSON")->required();
  mamu_decide->add_option("--n-max", n_max)->capture_default_str();
  auto* mamu_red = mamu->add_subcommand("verify-reduction", "Check the MPO-to-map reduction identity");
  std::string red_mpo;
  std::size_t red_s = 9, red_t = 9;
  std::uint64_t red_seed = budget.seed;
  mamu_red->add_option("--mpo", red_mpo, "MPO JSON; random when absent");
  mamu_red->add_option("--seed", red_seed, "Seed of the random MPO");
  mamu_red->add_option("--s", red_s, "Bond dimension of the random MPO")->capture_default_str();
  mamu_red->add_option("--t", red_t, "Number of matrices of the random MPO")->capture_default_str();
  mamu_red->add_option("--n-max", n_max)->capture_default_str();

  // mpo
  auto* mpo = app.add_subcommand("mpo", "MPO loops");
  mpo->require_subcommand(1);
  auto* mpo_decide = mpo->add_subcommand("decide", "Search tau_n(C) for a negative entry, n <= n-max");
  std::string mpo_file;
  mpo_decide->add_option("--mpo", mpo_file, "MPO JSON")->required();
  mpo_decide->add_option("--n-max", n_max)->capture_default_str();

  // layers
  auto* layers = app.add_subcommand("layers", "Sequence-indexed objects under the cofinite filter");
  layers->require_subcommand(1);
  std::string layer_file;
  auto* l_sign = layers->add_subcommand("sign", "Eventual sign and size of a layered scalar");
  l_sign->add_option("--file", layer_file, "Layered scalar JSON")->required();
  auto* l_psd = layers->add_subcommand("psd", "Layered psd of a layered matrix");
  l_psd->add_option("--file", layer_file, "Layered matrix JSON")->required();
  std::string l_map_check = "cp";
  auto* l_map = layers->add_subcommand("map", "Layered CP / coCP / positivity of a layered map");
  l_map->add_option("--file", layer_file, "Layered map JSON")->required();
  l_map->add_option("--check", l_map_check, "cp, cocp or positive")
      ->check(CLI::IsMember({"cp", "cocp", "positive"}))
      ->capture_default_str();
  add_budget(l_map);
  auto* l_inner = layers->add_subcommand("inner", "Standard versus quasi-inner product counterexample");
  std::string inner_eps = "1/10";
  std::size_t cutoff = 10000;
  l_inner->add_option("--eps", inner_eps)->capture_default_str();
  l_inner->add_option("--cutoff", cutoff)->capture_default_str();
  auto* l_l2 = layers->add_subcommand("l2", "Layered essential tsp witness");
  std::size_t m_max = 2;
  std::vector<std::size_t> window{2, 5};
  l_l2->add_option("--m-max", m_max)->capture_default_str();
  l_l2->add_option("--window", window, "lo hi")->expected(2)->capture_default_str();
  add_budget(l_l2);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kMalformed;
  }

  try {
    if (*vp) {
      verify::ClaimOptions opts;
      opts.seed = budget.seed;
      opts.budget = budget;
      opts.n_max = vp_n_max;
      opts.max_dim = max_dim;
      return cmd_verify_paper(opts, vp_only, vp_out, output.human);
    }

    if (*psd) {
      // a bare matrix or a Choi file; the latter carries the split for --partial-transpose
      const Json j = read_json_file(psd_file);
      EpsMatrix m;
      if (psd_pt || j.contains("matrix")) {
        const ChoiMatrix c = choi_from_json(j);
        m = psd_pt ? partial_transpose(c.matrix, c.dims) : c.matrix;
      } else {
        m = matrix_from_json(j);
      }
      const PsdVerdict v = psd_check(m);
      output.emit(to_json(v), psd_text(v));
      return v.psd() ? kPass : kFail;
    }

    if (*choi) {
      const MapDecomposition p = map_from_json(read_json_file(choi_map));
      const ChoiMatrix c = choi_from_decomposition(p);
      const PsdVerdict cp = is_cp(c);
      const PsdVerdict cocp = is_cocp(c);
      Json j = {{"choi", to_json(c)}, {"cp", to_json(cp)}, {"cocp", to_json(cocp)}};
      output.emit(j, "CP: " + psd_text(cp) + "\ncoCP: " + psd_text(cocp));
      return kPass;
    }

    if (*search) {
      const MapDecomposition p = map_from_json(read_json_file(search_map));
      const BlockPositivityVerdict v = n_tsp_search(p, search_n, budget, max_dim);
      std::string text = v.violation() ? "ViolationFound value " + std::to_string(v.value)
                                       : "NoViolationFound (one-sided; best value " + std::to_string(v.value) + ")";
      output.emit(search_report(v, budget), text);
      return v.violation() ? kFail : kPass;
    }

    if (*mu16) {
      const ChoiMatrix c = mu16_choi(d1, d2);
      output.emit(to_json(c), "rank " + std::to_string(rank(c.matrix)) + ", " + psd_text(psd_check(c.matrix)));
      return kPass;
    }

    if (*rho) {
      const RhoPipelineReport r = rho_eta_pipeline(parse_eps_rational(eta_text));
      Json j = {{"eta", to_string(r.eta)},
                {"alpha", to_string(r.alpha)},
                {"beta", to_string(r.beta)},
                {"closed_alpha", to_string(r.closed_alpha)},
                {"closed_beta", to_string(r.closed_beta)},
                {"matches_closed_form", r.matches_closed_form},
                {"trace_one", r.trace_one},
                {"psd", to_json(r.psd)},
                {"npt", to_json(r.npt)},
                {"shadow_ppt", to_json(r.shadow_ppt)},
                {"rho", to_json(r.rho)}};
      if (r.reparametrization) j["matches_closed_form_at_eta"] = to_string(*r.reparametrization);
      if (!r.failed_stage.empty()) j["failed_stage"] = r.failed_stage;
      std::string text = "rho = (" + to_string(r.alpha) + ") 1 - (" + to_string(r.beta) + ") F\n" +
                         "closed form: (" + to_string(r.closed_alpha) + ") 1 - (" + to_string(r.closed_beta) +
                         ") F, match: " + (r.matches_closed_form ? "yes" : "no") + "\npsd: " + psd_text(r.psd) +
                         "\npartial transpose: " + psd_text(r.npt);
      output.emit(j, text);
      return r.failed_stage.empty() ? kPass : kFail;
    }

    if (*mamu_decide) {
      const MapDecomposition p = map_from_json(read_json_file(mamu_map));
      const LoopResult r = bounded_tsp_mamu(p, n_max, max_dim);
      Json j = {{"status", r.violation ? "Violation" : "NoViolationUpTo"}, {"n_max", r.n_max}};
      std::string text = "NoViolation up to n = " + std::to_string(r.n_max);
      if (r.violation) {
        j["n"] = *r.n;
        if (!r.tuple.empty()) j["tuple"] = r.tuple;
        if (r.value) j["value"] = to_string(*r.value);
        if (r.witness) j["witness"] = to_json(*r.witness);
        text = "Violation(" + std::to_string(*r.n) + (r.tuple.empty() ? "" : ", " + tuple_text(r.tuple)) + ")";
      }
      output.emit(j, text);
      return r.violation ? kFail : kPass;
    }

    if (*mamu_red) {
      const MpoTensor c = red_mpo.empty() ? random_mpo(red_s, red_t, red_seed) : mpo_from_json(read_json_file(red_mpo));
      const ReductionCheck r = verify_reduction(c, n_max, max_dim);
      Json j = {{"holds", r.holds}, {"n_checked", r.n_checked}, {"dense_checked", r.dense_checked}};
      if (r.failed_n) j["failed_n"] = *r.failed_n;
      if (r.failed_index) j["failed_tuple"] = tuple_from_index(*r.failed_index, c.t, *r.failed_n);
      if (!r.failed_path.empty()) j["failed_path"] = r.failed_path;
      output.emit(j, r.holds ? "reduction identity holds for n <= " + std::to_string(r.n_checked)
                             : "reduction identity fails at n = " + std::to_string(*r.failed_n));
      return r.holds ? kPass : kFail;
    }

    if (*mpo_decide) {
      const MpoTensor c = mpo_from_json(read_json_file(mpo_file));
      const LoopResult r = bounded_positive_mpo(c, n_max);
      Json j = {{"status", r.violation ? "Violation" : "NoViolationUpTo"}, {"n_max", r.n_max}};
      std::string text = "NoViolation up to n = " + std::to_string(r.n_max);
      if (r.violation) {
        j["n"] = *r.n;
        j["tuple"] = r.tuple;
        if (r.value) j["value"] = to_string(*r.value);
        text = "Violation(" + std::to_string(*r.n) + ", " + tuple_text(r.tuple) + ")";
      }
      output.emit(j, text);
      return r.violation ? kFail : kPass;
    }

    if (*l_sign) {
      const LayeredScalarFile f = layered_scalar_from_json(read_json_file(layer_file));
      const FilterVerdict v = seq_sign(f.scalar, f.window);
      const ScalarClass c = classify(f.scalar);
      Json j = {{"nonnegative", to_json(v)}, {"magnitude", to_string(c.magnitude)}};
      if (c.sign) j["sign"] = to_int(*c.sign);
      output.emit(j, ">= 0: " + to_string(v.status) + ", " + to_string(c.magnitude));
      if (v.status == FilterStatus::Undetermined) return kInconclusive;
      return v.status == FilterStatus::HoldsOnCofinite ? kPass : kFail;
    }

    if (*l_psd || *l_map) {
      FilterVerdict v;
      if (*l_psd) {
        v = layered_psd(layered_matrix_from_json(read_json_file(layer_file)));
      } else {
        const LayeredMap p = layered_map_from_json(read_json_file(layer_file));
        if (l_map_check == "cp")
          v = layered_cp(p);
        else if (l_map_check == "cocp")
          v = layered_cocp(p);
        else
          v = layered_map_positive(p, budget);
      }
      output.emit(to_json(v), to_string(v.status) + ": " + v.evidence);
      if (v.status == FilterStatus::Undetermined) return kInconclusive;
      return v.status == FilterStatus::HoldsOnCofinite ? kPass : kFail;
    }

    if (*l_inner) {
      const InnerProductReport r = inner_product_counterexample(parse_rational(inner_eps), cutoff);
      Json j = {{"eps", to_string(r.eps)},
                {"cutoff", r.cutoff},
                {"standard_value", r.standard_value.get_d()},
                {"standard_nonnegative", r.standard_value >= 0},
                {"seq", to_json(r.seq)},
                {"disagreement", r.disagreement}};
      output.emit(j, "standard " + std::to_string(r.standard_value.get_d()) + ", seq " + to_string(r.seq.status) +
                         (r.disagreement ? ", disagree" : ", agree"));
      return kPass;
    }

    if (*l_l2) {
      const L2WitnessReport r = l2_tsp_witness(m_max, {window[0], window[1]}, budget);
      Json ls = Json::array();
      std::string text;
      for (const auto& l : r.layers) {
        Json tsp = Json::array();
        for (const auto& [m, s] : l.tsp) tsp.push_back({{"m", m}, {"status", s.violation() ? "ViolationFound" : "NoViolationFound"}});
        ls.push_back({{"n", l.n}, {"eps", l.eps_bound}, {"scale", to_string(l.scale)}, {"essential", l.essential}, {"tsp", tsp}});
        text += "layer " + std::to_string(l.n) + ": eps " + std::to_string(l.eps_bound) +
                (l.essential ? ", essential" : ", NOT essential") + "\n";
      }
      Json j = {{"mu", r.mu}, {"norm", r.norm}, {"layers", ls}, {"essential_all", r.essential_all},
                {"tsp_evidence_all", r.tsp_evidence_all}, {"tsp_evidence", "one-sided"}};
      output.emit(j, text + (r.passed() ? "pass" : "fail"));
      return r.passed() ? kPass : kFail;
    }
  } catch (const ParseError& e) {
    std::cerr << e.what() << '\n';
    return kMalformed;
  } catch (const ResourceLimit& e) {
    std::cerr << e.what() << '\n';
    return kInconclusive;
  } catch (const Error& e) {
    std::cerr << e.what() << '\n';
    return kMalformed;
  }
  return kMalformed;
}
