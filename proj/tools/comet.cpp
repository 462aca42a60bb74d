// Command-line frontend: every module is reachable through a subcommand,
// with CSV/JSON output suitable for regenerating the numeric tables behind
// the comparison figures.
//
// Exit codes: 0 ok, 1 check failure, 2 usage error.
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "comet/acceptance.hpp"
#include "comet/channel.hpp"
#include "comet/entropy_method.hpp"
#include "comet/info_measures.hpp"
#include "comet/io.hpp"
#include "comet/ldpc.hpp"
#include "comet/ofdm.hpp"
#include "comet/rng.hpp"
#include "comet/simulate.hpp"
#include "comet/special_functions.hpp"
#include "comet/tail_bounds.hpp"
#include "comet/transport.hpp"

namespace {

using nlohmann::json;

// Output sink: file when --out is given, stdout otherwise.
struct Sink {
  std::string path;
  std::ofstream file;

  std::ostream& stream() {
    if (path.empty()) return std::cout;
    if (!file.is_open()) {
      file.open(path);
      if (!file) throw std::runtime_error("cannot open output file: " + path);
    }
    return file;
  }
};

std::vector<double> parse_list(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (!tok.empty()) out.push_back(std::stod(tok));
  }
  return out;
}

// "start:stop:step" inclusive sweep, or a comma list.
std::vector<double> parse_sweep(const std::string& s) {
  if (s.find(':') == std::string::npos) return parse_list(s);
  std::stringstream ss(s);
  std::string a, b, c;
  std::getline(ss, a, ':');
  std::getline(ss, b, ':');
  std::getline(ss, c, ':');
  const double start = std::stod(a), stop = std::stod(b);
  const double step = c.empty() ? 1.0 : std::stod(c);
  if (!(step > 0.0)) throw std::runtime_error("sweep step must be positive");
  std::vector<double> out;
  for (double v = start; v <= stop + 1e-12; v += step) out.push_back(v);
  return out;
}

comet::FiniteDistribution load_distribution(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open distribution: " + path);
  return comet::read_distribution_json(f);
}

comet::ChannelMatrix load_channel(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open channel: " + path);
  return comet::read_channel_csv(f);
}

comet::BinaryInputChannel parse_channel_kind(const std::string& s) {
  if (s == "mbios") return comet::BinaryInputChannel::MBIOS;
  if (s == "bsc") return comet::BinaryInputChannel::BSC;
  if (s == "bec") return comet::BinaryInputChannel::BEC;
  throw std::runtime_error("channel must be mbios, bsc, or bec");
}

void emit_json(Sink& sink, const json& j) { sink.stream() << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"concentration-of-measure bounds toolkit"};
  app.require_subcommand(1);
  int exit_status = 0;

  // ---------------------------------------------------------------- bounds
  auto* bounds = app.add_subcommand("bounds", "martingale tail bounds");
  bounds->require_subcommand(1);
  {
    auto* cmp = bounds->add_subcommand("compare", "exponent comparison table");
    auto gammas = std::make_shared<std::string>("0.125,0.25,0.5");
    auto grid = std::make_shared<int>(200);
    auto sink = std::make_shared<Sink>();
    cmp->add_option("--gamma,--gammas", *gammas, "comma list of gamma values");
    cmp->add_option("--grid", *grid, "number of delta grid points");
    cmp->add_option("--out", sink->path, "output CSV path");
    cmp->callback([gammas, grid, sink] {
      const auto gs = parse_list(*gammas);
      comet::CsvWriter csv(sink->stream());
      std::vector<std::string> head = {"delta", "exponent.azuma",
                                       "exponent.jump-only[f(delta)]"};
      for (double g : gs) {
        head.push_back("exponent.variance-refined[gamma=" + comet::format_sig12(g) + "]");
      }
      csv.header(head);
      for (int i = 0; i <= *grid; ++i) {
        const double delta = static_cast<double>(i) / *grid;
        std::vector<double> row = {delta, delta * delta / 2.0,
                                   comet::f_delta(delta)};
        for (double g : gs) row.push_back(comet::refined_exponent(g, delta));
        csv.row(row);
      }
    });

    auto* az = bounds->add_subcommand("azuma", "bounded-jump tail bound");
    auto r = std::make_shared<double>(0.0);
    auto jumps = std::make_shared<std::string>();
    auto sink2 = std::make_shared<Sink>();
    az->add_option("--r", *r, "deviation")->required();
    az->add_option("--jumps", *jumps, "comma list of per-step jump bounds")->required();
    az->add_option("--out", sink2->path, "output path");
    az->callback([r, jumps, sink2] {
      const auto d = parse_list(*jumps);
      json j;
      j["bound.azuma"] = comet::azuma_bound(*r, d);
      j["bound.mcdiarmid"] = comet::mcdiarmid_bound(*r, d);
      emit_json(*sink2, j);
    });

    auto* rf = bounds->add_subcommand("refined", "variance-aware bound");
    auto n = std::make_shared<std::int64_t>(1);
    auto dd = std::make_shared<double>(1.0);
    auto s2 = std::make_shared<double>(1.0);
    auto alpha = std::make_shared<double>(0.0);
    auto one_sided = std::make_shared<bool>(false);
    auto clamp = std::make_shared<bool>(false);
    auto sink3 = std::make_shared<Sink>();
    rf->add_option("--n", *n)->required();
    rf->add_option("--d", *dd)->required();
    rf->add_option("--sigma2", *s2)->required();
    rf->add_option("--alpha", *alpha)->required();
    rf->add_flag("--one-sided", *one_sided, "upper tail only");
    rf->add_flag("--clamp", *clamp, "clip the reported bound at 1");
    rf->add_option("--out", sink3->path);
    rf->callback([n, dd, s2, alpha, one_sided, clamp, sink3] {
      const comet::MartingaleSpec spec{*n, *dd, *s2};
      const auto side = *one_sided ? comet::TailSide::upper_tail
                                   : comet::TailSide::two_sided;
      double b = comet::refined_bound(spec, *alpha, side);
      const auto sd = comet::small_deviation_bound(spec, *alpha);
      json j;
      j["bound.variance-refined"] = *clamp ? std::min(1.0, b) : b;
      j["bound.small-deviation"] = *clamp ? std::min(1.0, sd.bound) : sd.bound;
      j["exponent.small-deviation-leading"] = sd.leading_exponent;
      emit_json(*sink3, j);
    });

    auto* hk = bounds->add_subcommand("hoeffding", "interval-sum bounds");
    auto rr = std::make_shared<double>(0.0);
    auto ivs = std::make_shared<std::string>();
    auto sink4 = std::make_shared<Sink>();
    hk->add_option("--r", *rr)->required();
    hk->add_option("--intervals", *ivs, "semicolon list 'a,b,mean'")->required();
    hk->add_option("--out", sink4->path);
    hk->callback([rr, ivs, sink4] {
      std::vector<comet::BoundedInterval> list;
      std::stringstream ss(*ivs);
      std::string item;
      while (std::getline(ss, item, ';')) {
        const auto v = parse_list(item);
        if (v.size() != 3) throw std::runtime_error("interval needs a,b,mean");
        list.push_back({v[0], v[1], v[2]});
      }
      const auto out = comet::hoeffding_kearns_saul(*rr, list);
      json j;
      j["bound.hoeffding"] = out.hoeffding;
      j["bound.kearns-saul"] = out.kearns_saul;
      j["degenerate"] = out.degenerate;
      emit_json(*sink4, j);
    });

    auto* mdp = bounds->add_subcommand("mdp", "moderate-deviation exponents");
    auto eta = std::make_shared<double>(0.75);
    auto al = std::make_shared<double>(1.0);
    auto d2 = std::make_shared<double>(1.0);
    auto sg = std::make_shared<double>(1.0);
    auto sink5 = std::make_shared<Sink>();
    mdp->add_option("--eta", *eta)->required();
    mdp->add_option("--alpha", *al)->required();
    mdp->add_option("--d", *d2)->required();
    mdp->add_option("--sigma2", *sg)->required();
    mdp->add_option("--out", sink5->path);
    mdp->callback([eta, al, d2, sg, sink5] {
      const auto e = comet::mdp_compare(*eta, *al, *d2, *sg);
      json j;
      j["exponent.azuma"] = e.azuma;
      j["exponent.variance-refined"] = e.refined;
      j["exponent.mdp-limit"] = e.mdp;
      emit_json(*sink5, j);
    });
  }

  // ------------------------------------------------------------------ info
  auto* info = app.add_subcommand("info", "divergences and transport on finite spaces");
  info->require_subcommand(1);
  {
    auto p_path = std::make_shared<std::string>();
    auto q_path = std::make_shared<std::string>();
    auto alpha = std::make_shared<double>(2.0);
    auto sink = std::make_shared<Sink>();
    auto* kl = info->add_subcommand("kl", "relative entropy D(P||Q)");
    kl->add_option("--p", *p_path)->required();
    kl->add_option("--q", *q_path)->required();
    kl->add_option("--out", sink->path);
    kl->callback([p_path, q_path, sink] {
      json j;
      j["divergence.kl"] =
          comet::kl_divergence(load_distribution(*p_path), load_distribution(*q_path));
      emit_json(*sink, j);
    });

    auto* renyi = info->add_subcommand("renyi", "Renyi divergence");
    auto sink_r = std::make_shared<Sink>();
    renyi->add_option("--p", *p_path)->required();
    renyi->add_option("--q", *q_path)->required();
    renyi->add_option("--alpha", *alpha)->required();
    renyi->add_option("--out", sink_r->path);
    renyi->callback([p_path, q_path, alpha, sink_r] {
      json j;
      j["divergence.renyi"] = comet::renyi_divergence(
          load_distribution(*p_path), load_distribution(*q_path), *alpha);
      j["order"] = *alpha;
      emit_json(*sink_r, j);
    });

    auto* tv = info->add_subcommand("tv", "total variation + optimal coupling");
    auto coupling_path = std::make_shared<std::string>();
    auto sink_t = std::make_shared<Sink>();
    tv->add_option("--p", *p_path)->required();
    tv->add_option("--q", *q_path)->required();
    tv->add_option("--coupling", *coupling_path, "write coupling CSV here");
    tv->add_option("--out", sink_t->path);
    tv->callback([p_path, q_path, coupling_path, sink_t] {
      const auto P = load_distribution(*p_path);
      const auto Q = load_distribution(*q_path);
      const auto out = comet::tv_and_w1_hamming(P, Q);
      if (!coupling_path->empty()) {
        std::ofstream f(*coupling_path);
        comet::write_coupling_csv(f, out.coupling, P.labels);
      }
      json j;
      j["distance.total-variation"] = out.tv;
      emit_json(*sink_t, j);
    });

    auto* wass = info->add_subcommand("wasserstein", "exact transport distance");
    auto metric_path = std::make_shared<std::string>();
    auto order = std::make_shared<double>(1.0);
    auto sink_w = std::make_shared<Sink>();
    wass->add_option("--p", *p_path)->required();
    wass->add_option("--q", *q_path)->required();
    wass->add_option("--metric", *metric_path, "CSV distance matrix (default Hamming)");
    wass->add_option("--order", *order, "p >= 1");
    wass->add_option("--out", sink_w->path);
    wass->callback([p_path, q_path, metric_path, order, sink_w] {
      const auto P = load_distribution(*p_path);
      const auto Q = load_distribution(*q_path);
      comet::FiniteMetricSpace space;
      if (metric_path->empty()) {
        space = comet::FiniteMetricSpace::hamming(P.size());
      } else {
        std::ifstream f(*metric_path);
        if (!f) throw std::runtime_error("cannot open metric file");
        const auto m = comet::read_channel_csv(f);  // reuse the CSV matrix reader
        space.k = m.nx;
        space.dist = m.t;
      }
      space.validate();
      const auto out = comet::wasserstein_p(P, Q, space, *order);
      json j;
      j["distance.wasserstein"] = out.value;
      j["order"] = *order;
      emit_json(*sink_w, j);
    });

    auto* pin = info->add_subcommand("pinsker", "Pinsker and its refinement");
    auto sink_p = std::make_shared<Sink>();
    pin->add_option("--p", *p_path)->required();
    pin->add_option("--q", *q_path)->required();
    pin->add_option("--out", sink_p->path);
    pin->callback([p_path, q_path, sink_p] {
      const auto s =
          comet::pinsker_suite(load_distribution(*p_path), load_distribution(*q_path));
      json j;
      j["distance.total-variation"] = s.tv;
      j["bound.pinsker"] = s.pinsker_rhs;
      j["bound.refined-pinsker"] = s.ow_rhs;
      j["balance-coefficient"] = s.balance;
      j["balance-exact"] = s.balance_exact;
      emit_json(*sink_p, j);
    });

    auto* fano = info->add_subcommand("fano-list", "list-decoding entropy bound");
    auto pe = std::make_shared<double>(0.0);
    auto cap = std::make_shared<std::int64_t>(1);
    auto alphabet = std::make_shared<std::int64_t>(2);
    auto sink_f = std::make_shared<Sink>();
    fano->add_option("--pe", *pe)->required();
    fano->add_option("--list", *cap)->required();
    fano->add_option("--alphabet", *alphabet)->required();
    fano->add_option("--out", sink_f->path);
    fano->callback([pe, cap, alphabet, sink_f] {
      json j;
      j["bound.fano-list"] = comet::fano_list_bound(*pe, *cap, *alphabet);
      emit_json(*sink_f, j);
    });
  }

  // ------------------------------------------------------------------- lsi
  auto* lsi = app.add_subcommand("lsi", "entropy-method identity and LSI checks");
  lsi->require_subcommand(1);
  {
    auto* suite = lsi->add_subcommand("suite", "randomized check suites");
    auto checks = std::make_shared<std::string>("herbst,maurer,hamming,bernoulli,poisson,compound");
    auto instances = std::make_shared<int>(25);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto sink = std::make_shared<Sink>();
    suite->add_option("--checks", *checks, "comma list of check names");
    suite->add_option("--instances", *instances);
    suite->add_option("--seed", *seed)->required();
    suite->add_option("--out", sink->path);
    suite->callback([checks, instances, seed, sink, &exit_status] {
      std::stringstream ss(*checks);
      std::string name;
      auto& os = sink->stream();
      bool all_pass = true;
      while (std::getline(ss, name, ',')) {
        comet::StreamRng rng(*seed, std::hash<std::string>{}(name));
        for (int inst = 0; inst < *instances; ++inst) {
          json j;
          j["check"] = name;
          j["instance"] = inst;
          double lhs = 0.0, rhs = 0.0;
          bool pass = true;
          if (name == "herbst" || name == "maurer") {
            const size_t k = 2 + rng.below(5);
            std::vector<double> w(k), f(k);
            for (size_t i = 0; i < k; ++i) {
              w[i] = rng.uniform(0.05, 1.0);
              f[i] = rng.uniform(-1.0, 1.0);
            }
            comet::TiltedFamily fam(comet::FiniteDistribution::from_weights(w), f);
            const double lambda = rng.uniform(0.2, 2.5);
            const auto chk = name == "herbst"
                                 ? comet::herbst_identity_check(fam, lambda)
                                 : comet::maurer_identity_check(fam, lambda);
            lhs = chk.lhs;
            rhs = chk.rhs;
            pass = chk.gap <= 1e-6 && chk.quadrature_converged;
          } else if (name == "hamming" || name == "bernoulli") {
            const int n = 4 + static_cast<int>(rng.below(3));
            std::vector<double> f(size_t{1} << n);
            for (auto& v : f) v = rng.uniform(-1.0, 1.0);
            const double p = name == "hamming" ? 0.5 : rng.uniform(0.1, 0.45);
            const auto chk = comet::discrete_lsi_check(n, p, f);
            lhs = chk.lhs;
            rhs = chk.rhs;
            pass = chk.pass;
          } else if (name == "poisson" || name == "compound") {
            const int trunc = 80;
            std::vector<double> f(static_cast<size_t>(trunc) + 1);
            for (auto& v : f) v = rng.uniform(-0.8, 0.8);
            const std::vector<double> mu = {0.5, 0.3, 0.2};
            const auto chk =
                name == "poisson"
                    ? comet::poisson_lsi_check(1.0, f, trunc)
                    : comet::poisson_lsi_check(1.0, f, trunc, &mu);
            lhs = chk.lhs;
            rhs = chk.rhs;
            pass = chk.pass;
          } else {
            throw std::runtime_error("unknown check: " + name);
          }
          j["lhs"] = lhs;
          j["rhs"] = rhs;
          j["gap"] = rhs - lhs;
          j["pass"] = pass;
          all_pass = all_pass && pass;
          os << j.dump() << "\n";
        }
      }
      if (!all_pass) exit_status = 1;
    });

    auto* gauss = lsi->add_subcommand("gaussian", "entropy-power / estimation suite");
    auto density = std::make_shared<std::string>("gaussian");
    auto sink_g = std::make_shared<Sink>();
    gauss->add_option("--density", *density, "gaussian | mixture");
    gauss->add_option("--out", sink_g->path);
    gauss->callback([density, sink_g, &exit_status] {
      comet::DensityGrid g =
          *density == "mixture"
              ? comet::DensityGrid::gaussian_mixture(0.4, -1.2, 0.5, 1.0, 0.8,
                                                     -12.0, 12.0, 4001, true)
              : comet::DensityGrid::gaussian(0.0, 1.0, -12.0, 12.0, 4001);
      const std::vector<double> snr = {0.25, 0.5, 1.0, 2.0, 4.0};
      const auto rep = comet::gaussian_quadrature_suite(g, snr);
      json j;
      j["entropy"] = rep.entropy;
      j["entropy-power"] = rep.entropy_power;
      j["fisher-information"] = rep.fisher;
      j["stam-product"] = rep.stam_product;
      j["kl-to-gaussian"] = rep.kl_to_gaussian;
      j["relative-fisher"] = rep.rel_fisher;
      j["w2-to-gaussian"] = rep.w2;
      j["stam-ok"] = rep.stam_ok;
      j["van-trees-ok"] = rep.van_trees_ok;
      j["mmse-le-lmmse-ok"] = rep.mmse_le_lmmse_ok;
      j["hwi-ok"] = rep.hwi_ok;
      emit_json(*sink_g, j);
      if (!(rep.stam_ok && rep.van_trees_ok && rep.mmse_le_lmmse_ok && rep.hwi_ok)) {
        exit_status = 1;
      }
    });

    auto* ou = lsi->add_subcommand("ou", "smoothing-channel contraction check");
    auto t = std::make_shared<double>(0.5);
    auto sink_o = std::make_shared<Sink>();
    ou->add_option("--t", *t);
    ou->add_option("--out", sink_o->path);
    ou->callback([t, sink_o, &exit_status] {
      const auto g = comet::DensityGrid::gaussian_mixture(0.5, -1.0, 0.4, 1.4, 0.7,
                                                          -12.0, 12.0, 3001, false);
      const std::vector<std::pair<double, double>> ab = {{3.0, 1.5}, {4.0, 2.0}};
      const auto rep = comet::ou_contraction_check(g, *t, ab);
      json j;
      j["t"] = rep.t;
      j["kl-before"] = rep.kl_before;
      j["kl-after"] = rep.kl_after;
      j["contraction-bound"] = rep.contraction_rhs;
      j["kl-ok"] = rep.kl_ok;
      j["renyi-ok"] = rep.renyi_ok;
      emit_json(*sink_o, j);
      if (!(rep.kl_ok && rep.renyi_ok)) exit_status = 1;
    });
  }

  // ------------------------------------------------------------- transport
  auto* transport = app.add_subcommand("transport", "blowups and converse exponents");
  transport->require_subcommand(1);
  {
    auto* blow = transport->add_subcommand("blowup", "enumerated blowup vs bound");
    auto n = std::make_shared<int>(10);
    auto p = std::make_shared<double>(0.5);
    auto set_size = std::make_shared<int>(32);
    auto seed = std::make_shared<std::uint64_t>(1);
    auto sink = std::make_shared<Sink>();
    blow->add_option("--n", *n);
    blow->add_option("--p", *p);
    blow->add_option("--set-size", *set_size);
    blow->add_option("--seed", *seed)->required();
    blow->add_option("--out", sink->path);
    blow->callback([n, p, set_size, seed, sink] {
      comet::StreamRng rng(*seed, 0);
      const size_t states = size_t{1} << *n;
      std::vector<std::uint32_t> set;
      for (int i = 0; i < *set_size; ++i) {
        set.push_back(static_cast<std::uint32_t>(rng.below(states)));
      }
      const auto spec = comet::BlowupSpec::bernoulli_cube(*n, *p, set);
      comet::CsvWriter csv(sink->stream());
      csv.header({"r", "mass.blowup", "bound.transport-blowup"});
      for (int r = 0; r <= *n; ++r) {
        const auto m = comet::blowup(spec, r);
        csv.row({static_cast<double>(r), m.mass_Ar,
                 comet::blowup_bound(m.mass_A, *n, r).value});
      }
    });

    auto* marton = transport->add_subcommand("marton", "T1 concentration profile");
    auto c = std::make_shared<double>(0.25);
    auto r = std::make_shared<double>(1.0);
    auto sink_m = std::make_shared<Sink>();
    marton->add_option("--c", *c)->required();
    marton->add_option("--r", *r)->required();
    marton->add_option("--out", sink_m->path);
    marton->callback([c, r, sink_m] {
      const auto out = comet::marton_bound(*c, *r);
      json j;
      j["profile.K"] = out.profile.K;
      j["profile.kappa"] = out.profile.kappa;
      j["profile.r0"] = out.profile.r0;
      j["mass.lower-bound"] = out.value;
      emit_json(*sink_m, j);
    });

    auto* exp = transport->add_subcommand("exponent", "converse concentration exponent");
    auto pp = std::make_shared<double>(0.3);
    auto grid = std::make_shared<int>(50);
    auto sink_e = std::make_shared<Sink>();
    exp->add_option("--p", *pp)->required();
    exp->add_option("--grid", *grid);
    exp->add_option("--out", sink_e->path);
    exp->callback([pp, grid, sink_e] {
      comet::CsvWriter csv(sink_e->stream());
      csv.header({"delta", "exponent.upper-bound", "exponent.brute"});
      for (int i = 0; i <= *grid; ++i) {
        const double delta = static_cast<double>(i) / *grid;
        const auto ce = comet::concentration_exponent_bernoulli(delta, *pp);
        csv.row({delta, ce.upper, ce.brute});
      }
    });

    auto* rate = transport->add_subcommand("rate-function", "mass-weighted rate function");
    auto p_path = std::make_shared<std::string>();
    auto delta = std::make_shared<double>(0.1);
    auto sink_r = std::make_shared<Sink>();
    rate->add_option("--p", *p_path)->required();
    rate->add_option("--delta", *delta)->required();
    rate->add_option("--out", sink_r->path);
    rate->callback([p_path, delta, sink_r] {
      const auto P = load_distribution(*p_path);
      const auto out = comet::rate_function(P, P.probs, *delta);
      json j;
      j["rate-function"] = out.value;
      emit_json(*sink_r, j);
    });
  }

  // ------------------------------------------------------------------ ldpc
  auto* ldpc = app.add_subcommand("ldpc", "degree-distribution constants");
  ldpc->require_subcommand(1);
  {
    auto dd_spec = std::make_shared<std::string>("2,20");

    auto* stats = ldpc->add_subcommand("stats", "design rate and node fractions");
    auto sink_s = std::make_shared<Sink>();
    stats->add_option("--dd", *dd_spec, "'dv,dc' or file")->required();
    stats->add_option("--out", sink_s->path);
    stats->callback([dd_spec, sink_s] {
      const auto st = comet::degree_stats(comet::parse_degree_spec(*dd_spec));
      json j;
      j["design-rate"] = st.R_d;
      j["avg-right-degree"] = st.a_R;
      j["degree-identity-gap"] = st.identity_check;
      for (const auto& [i, g] : st.Gamma) j["Gamma"][std::to_string(i)] = g;
      emit_json(*sink_s, j);
    });

    auto* cond = ldpc->add_subcommand("cond-entropy", "conditional-entropy concentration");
    auto cval = std::make_shared<std::string>("0.98");
    auto chan = std::make_shared<std::string>("mbios");
    auto sink_c = std::make_shared<Sink>();
    cond->add_option("--dd", *dd_spec)->required();
    cond->add_option("--C", *cval, "capacity value or sweep 'start:stop:step'")
        ->required();
    cond->add_option("--channel", *chan)->required();
    cond->add_option("--out", sink_c->path);
    cond->callback([dd_spec, cval, chan, sink_c] {
      const auto dd = comet::parse_degree_spec(*dd_spec);
      const auto kind = parse_channel_kind(*chan);
      const auto cs = parse_sweep(*cval);
      if (cs.size() == 1) {
        const auto out = comet::cond_entropy_concentration(dd, cs[0], kind);
        json j;
        j["coefficient.baseline"] = out.B_orig;
        j["coefficient.capacity-aware"] = out.B_tight;
        j["improvement-factor"] = out.factor;
        emit_json(*sink_c, j);
        return;
      }
      comet::CsvWriter csv(sink_c->stream());
      csv.header({"C", "coefficient.baseline", "coefficient.capacity-aware",
                  "improvement-factor"});
      for (double c : cs) {
        const auto out = comet::cond_entropy_concentration(dd, c, kind);
        csv.row({c, out.B_orig, out.B_tight, out.factor});
      }
    });

    auto* thr = ldpc->add_subcommand("threshold", "erasure-channel BP threshold");
    auto sink_t = std::make_shared<Sink>();
    thr->add_option("--dd", *dd_spec)->required();
    thr->add_option("--out", sink_t->path);
    thr->callback([dd_spec, sink_t] {
      const auto out = comet::bec_bp_threshold(comet::parse_degree_spec(*dd_spec));
      json j;
      j["threshold.bp"] = out.p_bp;
      j["capacity"] = out.capacity;
      emit_json(*sink_t, j);
    });

    auto* cyc = ldpc->add_subcommand("cycles", "cycle-count concentration");
    auto alpha = std::make_shared<double>(0.1);
    auto nn = std::make_shared<std::int64_t>(0);
    auto sink_y = std::make_shared<Sink>();
    cyc->add_option("--dd", *dd_spec)->required();
    cyc->add_option("--alpha", *alpha)->required();
    cyc->add_option("--n", *nn, "optional block length for the probability");
    cyc->add_option("--out", sink_y->path);
    cyc->callback([dd_spec, alpha, nn, sink_y] {
      const auto out = comet::cycles_bound(comet::parse_degree_spec(*dd_spec), *alpha);
      json j;
      j["eta"] = out.eta;
      j["exponent.bits-per-n"] = out.exponent_bits;
      j["exponent.nats-per-n"] = out.exponent_nats;
      j["exponent.azuma-nats-per-n"] = out.azuma_exponent_nats;
      j["zero-probability"] = out.zero;
      if (*nn > 0) j["probability.bound"] = out.probability_at(*nn);
      emit_json(*sink_y, j);
    });

    auto* md = ldpc->add_subcommand("min-distance", "ensemble distance interval");
    auto n2 = std::make_shared<std::int64_t>(1000);
    auto rate = std::make_shared<double>(0.5);
    auto alpha2 = std::make_shared<double>(3.0);
    auto sink_m = std::make_shared<Sink>();
    md->add_option("--n", *n2)->required();
    md->add_option("--R", *rate)->required();
    md->add_option("--alpha", *alpha2)->required();
    md->add_option("--out", sink_m->path);
    md->callback([n2, rate, alpha2, sink_m] {
      const auto out = comet::min_distance_interval(*n2, *rate, *alpha2);
      json j;
      j["interval.lo"] = out.lo;
      j["interval.hi"] = out.hi;
      j["confidence"] = out.confidence;
      j["vacuous"] = out.vacuous;
      emit_json(*sink_m, j);
    });

    auto* expander = ldpc->add_subcommand("expander", "neighbor-count bound");
    auto n3 = std::make_shared<std::int64_t>(10000);
    auto l = std::make_shared<int>(3);
    auto rr = std::make_shared<int>(6);
    auto a3 = std::make_shared<double>(0.1);
    auto d3 = std::make_shared<double>(0.01);
    auto sink_x = std::make_shared<Sink>();
    expander->add_option("--n", *n3)->required();
    expander->add_option("--l", *l)->required();
    expander->add_option("--r", *rr)->required();
    expander->add_option("--alpha", *a3)->required();
    expander->add_option("--delta", *d3)->required();
    expander->add_option("--out", sink_x->path);
    expander->callback([n3, l, rr, a3, d3, sink_x] {
      const auto out = comet::expander_bound(*n3, *l, *rr, *a3, *d3);
      json j;
      j["neighbors.lower-bound"] = out.value;
      j["neighbors.expected"] = out.expected_neighbors;
      j["vacuous"] = out.vacuous;
      emit_json(*sink_x, j);
    });

    auto* isi = ldpc->add_subcommand("isi", "message-passing concentration constants");
    auto dv = std::make_shared<int>(2);
    auto dc = std::make_shared<int>(3);
    auto w = std::make_shared<int>(1);
    auto imem = std::make_shared<int>(1);
    auto ell = std::make_shared<int>(1);
    auto nv = std::make_shared<double>(-1.0);
    auto nc = std::make_shared<double>(-1.0);
    auto sink_i = std::make_shared<Sink>();
    isi->add_option("--dv", *dv)->required();
    isi->add_option("--dc", *dc)->required();
    isi->add_option("--W", *w)->required();
    isi->add_option("--I", *imem);
    isi->add_option("--ell", *ell)->required();
    isi->add_option("--Nv", *nv, "tree count of variable nodes (optional)");
    isi->add_option("--Nc", *nc, "tree count of check nodes (optional)");
    isi->add_option("--out", sink_i->path);
    isi->callback([dv, dc, w, imem, ell, nv, nc, sink_i] {
      const comet::IsiSpec spec{*dv, *dc, *w, *imem, *ell};
      const auto out = comet::isi_params(
          spec, *nv >= 0.0 ? std::optional<double>(*nv) : std::nullopt,
          *nc >= 0.0 ? std::optional<double>(*nc) : std::nullopt);
      json j;
      j["growth-factor"] = out.alpha_growth;
      j["edges.N_e"] = out.N_e;
      j["messages.N_Y"] = out.N_Y;
      j["beta"] = out.beta;
      j["inv-beta"] = out.inv_beta;
      if (out.gamma) j["gamma"] = *out.gamma;
      emit_json(*sink_i, j);
    });
  }

  // ----------------------------------------------------------------- rates
  auto* rates = app.add_subcommand("rates", "achievable rates and converses");
  rates->require_subcommand(1);
  {
    auto* biawgn = rates->add_subcommand("biawgn", "mutual information vs rate");
    auto snr_db = std::make_shared<std::string>("-10:20:0.5");
    auto terms = std::make_shared<int>(30);
    auto bits = std::make_shared<bool>(false);
    auto sink = std::make_shared<Sink>();
    biawgn->add_option("--snr-db", *snr_db, "sweep 'start:stop:step' in dB");
    biawgn->add_option("--terms", *terms);
    biawgn->add_flag("--bits", *bits, "report bits instead of nats");
    biawgn->add_option("--out", sink->path);
    biawgn->callback([snr_db, terms, bits, sink] {
      const double unit = *bits ? 1.0 / std::log(2.0) : 1.0;
      comet::CsvWriter csv(sink->stream());
      csv.header({"snr_db", "snr", "mutual-information.series",
                  "rate.common-achievable", "series.remainder-bound"});
      for (double db : parse_sweep(*snr_db)) {
        const double snr = std::pow(10.0, db / 10.0);
        const auto cap = comet::biawgn_capacity(snr, *terms);
        csv.row({db, snr, cap.value * unit, comet::biawgn_rate(snr) * unit,
                 cap.remainder_bound * unit});
      }
    });

    auto* volterra = rates->add_subcommand("volterra", "nonlinear-channel rate sweep");
    auto kernel_path = std::make_shared<std::string>();
    auto amps = std::make_shared<std::string>("0.2:2.0:0.2");
    auto sigma2 = std::make_shared<double>(1.0);
    auto m = std::make_shared<int>(2);
    auto sink_v = std::make_shared<Sink>();
    volterra->add_option("--kernel", *kernel_path, "kernel file (default: reference set)");
    volterra->add_option("--A", *amps, "amplitude sweep");
    volterra->add_option("--sigma2", *sigma2);
    volterra->add_option("--m", *m, "even moment order for the refined rate");
    volterra->add_option("--out", sink_v->path);
    volterra->callback([kernel_path, amps, sigma2, m, sink_v] {
      comet::VolterraKernel kernel;
      if (kernel_path->empty()) {
        kernel = comet::reference_third_order_kernel();
      } else {
        std::ifstream f(*kernel_path);
        if (!f) throw std::runtime_error("cannot open kernel file");
        kernel = comet::read_volterra_kernel(f);
      }
      comet::CsvWriter csv(sink_v->stream());
      csv.header({"A", "rate.R1", "rate.R2", "jump-bound.d", "variance.D_v",
                  "gamma2"});
      for (double a : parse_sweep(*amps)) {
        const auto params = comet::volterra_martingale_params(kernel, a, 0.5, *m);
        const auto r = comet::achievable_rates(params, *sigma2, *m);
        csv.row({a, r.R1, r.R2, params.d, params.D_v, params.gamma[0]});
      }
    });

    auto* capacity = rates->add_subcommand("capacity", "channel capacity + output law");
    auto chan_path = std::make_shared<std::string>();
    auto sink_c = std::make_shared<Sink>();
    capacity->add_option("--channel", *chan_path)->required();
    capacity->add_option("--out", sink_c->path);
    capacity->callback([chan_path, sink_c] {
      const auto out = comet::dmc_capacity(load_channel(*chan_path));
      json j;
      j["capacity.nats"] = out.C;
      j["capacity.bits"] = out.C / std::log(2.0);
      j["output-distribution"] = json::parse(comet::distribution_to_json(out.caod));
      j["converged"] = out.converged;
      emit_json(*sink_c, j);
    });

    auto* converse = rates->add_subcommand("converse", "output-divergence converse bounds");
    auto chan_path2 = std::make_shared<std::string>();
    auto n = std::make_shared<std::int64_t>(100);
    auto ln_m = std::make_shared<double>(-1.0);
    auto m_codewords = std::make_shared<double>(-1.0);
    auto eps = std::make_shared<double>(0.25);
    auto sink_b = std::make_shared<Sink>();
    converse->add_option("--channel", *chan_path2)->required();
    converse->add_option("--n", *n)->required();
    converse->add_option("--lnM", *ln_m, "log codebook size");
    converse->add_option("--M", *m_codewords, "codebook size");
    converse->add_option("--eps", *eps)->required();
    converse->add_option("--out", sink_b->path);
    converse->callback([chan_path2, n, ln_m, m_codewords, eps, sink_b] {
      double lm = *ln_m;
      if (lm < 0.0) {
        if (*m_codewords < 1.0) throw std::runtime_error("need --lnM or --M");
        lm = std::log(*m_codewords);
      }
      const auto out = comet::converse_output_bounds(*n, lm, *eps, load_channel(*chan_path2));
      json j;
      if (out.pv1) j["bound.positive-channel"] = *out.pv1;
      j["bound.general"] = out.pv2;
      j["channel-span"] = out.cT;
      emit_json(*sink_b, j);
    });
  }

  // ------------------------------------------------------------------ ofdm
  auto* ofdm = app.add_subcommand("ofdm", "crest-factor concentration");
  ofdm->require_subcommand(1);
  {
    auto* b = ofdm->add_subcommand("bounds", "the four analytic bounds");
    auto n = std::make_shared<int>(64);
    auto alpha = std::make_shared<double>(1.0);
    auto sink = std::make_shared<Sink>();
    b->add_option("--n", *n)->required();
    b->add_option("--alpha", *alpha)->required();
    b->add_option("--out", sink->path);
    b->callback([n, alpha, sink] {
      const auto out = comet::cf_bounds(*n, *alpha);
      json j;
      j["bound.azuma"] = out.azuma;
      j["bound.small-deviation"] = out.refined;
      j["bound.talagrand-median"] = out.talagrand_median;
      j["bound.mcdiarmid"] = out.mcdiarmid;
      emit_json(*sink, j);
    });

    auto* cf = ofdm->add_subcommand("cf", "Monte Carlo crest-factor study");
    auto n2 = std::make_shared<int>(64);
    auto mpsk = std::make_shared<int>(4);
    auto oversample = std::make_shared<int>(16);
    auto trials = std::make_shared<std::int64_t>(20000);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto alphas = std::make_shared<std::string>("0.5,1,1.5,2,3");
    auto sink2 = std::make_shared<Sink>();
    auto summary_path = std::make_shared<std::string>();
    cf->add_option("--n", *n2)->required();
    cf->add_option("--M", *mpsk);
    cf->add_option("--oversample", *oversample);
    cf->add_option("--trials", *trials)->required();
    cf->add_option("--seed", *seed)->required();
    cf->add_option("--alphas", *alphas);
    cf->add_option("--out", sink2->path, "per-alpha CSV");
    cf->add_option("--summary", *summary_path, "JSON summary path");
    cf->callback([n2, mpsk, oversample, trials, seed, alphas, sink2, summary_path,
                  &exit_status] {
      comet::OfdmSpec spec;
      spec.n = *n2;
      spec.psk_order = *mpsk;
      spec.oversample = *oversample;
      spec.trials = *trials;
      spec.seed = *seed;
      const auto rep = comet::cf_monte_carlo(spec, parse_sweep(*alphas));
      comet::CsvWriter csv(sink2->stream());
      csv.header({"alpha", "empirical.two-sided", "bound.azuma",
                  "bound.small-deviation", "bound.talagrand-median",
                  "bound.mcdiarmid"});
      for (const auto& row : rep.rows) {
        csv.row({row.alpha, row.empirical_mean_exceed, row.bounds.azuma,
                 row.bounds.refined, row.bounds.talagrand_median,
                 row.bounds.mcdiarmid});
      }
      json j;
      j["seed"] = spec.seed;
      j["trials"] = spec.trials;
      j["mean"] = rep.mean;
      j["median"] = rep.median;
      j["median-definition"] = "sample median";
      j["increment.max"] = rep.increment_max;
      j["increment.limit"] = rep.increment_limit;
      j["conditional-variance.estimate"] = rep.cond_var_estimate;
      j["conditional-variance.limit"] = rep.cond_var_limit;
      j["mean-power-error"] = rep.mean_power_error;
      j["dominance-ok"] = rep.dominance_ok;
      j["increments-ok"] = rep.increments_ok;
      if (!summary_path->empty()) {
        std::ofstream f(*summary_path);
        f << j.dump(2) << "\n";
      } else {
        std::cerr << j.dump(2) << "\n";
      }
      if (!(rep.dominance_ok && rep.increments_ok)) exit_status = 1;
    });
  }

  // -------------------------------------------------------------- simulate
  auto* simulate = app.add_subcommand("simulate", "Monte Carlo tail studies");
  simulate->require_subcommand(1);
  {
    auto* mart = simulate->add_subcommand("martingale", "binary-increment tails");
    auto n = std::make_shared<std::int64_t>(100);
    auto d = std::make_shared<double>(1.0);
    auto eps = std::make_shared<double>(0.5);
    auto trials = std::make_shared<std::int64_t>(100000);
    auto seed = std::make_shared<std::uint64_t>(0);
    auto xs = std::make_shared<std::string>("0.05,0.1,0.2,0.3,0.5");
    auto sink = std::make_shared<Sink>();
    mart->add_option("--n", *n)->required();
    mart->add_option("--d", *d)->required();
    mart->add_option("--eps", *eps)->required();
    mart->add_option("--trials", *trials)->required();
    mart->add_option("--seed", *seed)->required();
    mart->add_option("--xs", *xs, "per-step deviation grid");
    mart->add_option("--out", sink->path);
    mart->callback([n, d, eps, trials, seed, xs, sink] {
      const auto grid = parse_list(*xs);
      const auto table =
          comet::simulate_bernoulli_martingale(*n, *d, *eps, *trials, *seed, grid);
      comet::CsvWriter csv(sink->stream());
      csv.header({"x", "empirical.upper", "empirical.two-sided",
                  "bound.azuma-upper", "bound.variance-refined-upper"});
      for (const auto& row : table.rows) {
        csv.row({row.x, row.upper_empirical, row.two_sided_empirical,
                 row.azuma_upper, row.refined_upper});
      }
    });

    auto* dom = simulate->add_subcommand("dominance", "bound-vs-empirical suite");
    auto trials2 = std::make_shared<std::int64_t>(100000);
    auto seed2 = std::make_shared<std::uint64_t>(0);
    auto no_ofdm = std::make_shared<bool>(false);
    auto config_path = std::make_shared<std::string>();
    auto sink_d = std::make_shared<Sink>();
    auto* trials_opt = dom->add_option("--trials", *trials2);
    auto* seed_opt = dom->add_option("--seed", *seed2);
    dom->add_flag("--no-ofdm", *no_ofdm);
    dom->add_option("--config", *config_path,
                    "JSON {scenario, params, alphas[], trials, seed}");
    dom->add_option("--out", sink_d->path);
    dom->callback([trials2, seed2, no_ofdm, config_path, trials_opt, seed_opt,
                   sink_d, &exit_status] {
      comet::DominanceConfig cfg;
      if (!config_path->empty()) {
        std::ifstream f(*config_path);
        if (!f) throw std::runtime_error("cannot open config: " + *config_path);
        json j;
        f >> j;
        cfg.trials = j.at("trials").get<std::int64_t>();
        cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("alphas")) cfg.alphas = j["alphas"].get<std::vector<double>>();
        const std::string scenario = j.value("scenario", "all");
        cfg.include_ofdm = scenario == "all" || scenario == "ofdm";
        if (j.contains("params") && j["params"].contains("ofdm_sizes")) {
          cfg.ofdm_sizes = j["params"]["ofdm_sizes"].get<std::vector<int>>();
        }
      } else {
        if (trials_opt->count() == 0 || seed_opt->count() == 0) {
          throw std::runtime_error("need --config or both --trials and --seed");
        }
        cfg.trials = *trials2;
        cfg.seed = *seed2;
        cfg.include_ofdm = !*no_ofdm;
      }
      const auto rep = comet::bound_dominance_suite(cfg);
      auto& os = sink_d->stream();
      for (const auto& s : rep.scenarios) {
        for (const auto& row : s.rows) {
          json j;
          j["scenario"] = s.name;
          j["quantity"] = row.quantity;
          j["threshold"] = row.threshold;
          j["empirical"] = row.empirical;
          j["wilson-99-lo"] = row.wilson_lo;
          j["bound"] = row.bound;
          j["pass"] = row.pass;
          os << j.dump() << "\n";
        }
      }
      if (!rep.all_pass) {
        std::cerr << "dominance suite: FAILURES present\n";
        exit_status = 1;
      }
    });
  }

  // ------------------------------------------------------------ verify-all
  auto* verify = app.add_subcommand("verify-all", "run the acceptance matrix");
  {
    auto trials = std::make_shared<std::int64_t>(1000000);
    auto seed = std::make_shared<std::uint64_t>(2013);
    verify->add_option("--trials", *trials, "Monte Carlo sample size");
    verify->add_option("--seed", *seed);
    verify->callback([trials, seed, &exit_status] {
      comet::AcceptanceOptions opt;
      opt.mc_trials = *trials;
      opt.seed = *seed;
      const auto results = comet::run_acceptance(opt);
      bool all = true;
      for (const auto& r : results) {
        std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << "  [" << r.detail
                  << "]\n";
        all = all && r.pass;
      }
      std::cout << (all ? "ALL CRITERIA PASSED" : "CRITERIA FAILED") << "\n";
      if (!all) exit_status = 1;
    });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return exit_status;
}
