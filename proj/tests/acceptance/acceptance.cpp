// Copyright 2026 The dfs-forge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


// Acceptance run: one PASS/FAIL line per criterion, non-zero exit on any FAIL.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/math/distributions/chi_squared.hpp>

#include "dfs_forge/am_basis.hpp"
#include "dfs_forge/exchange.hpp"
#include "dfs_forge/ga_search.hpp"
#include "dfs_forge/json_io.hpp"
#include "dfs_forge/reference_sequences.hpp"
#include "dfs_forge/targets.hpp"
#include "test_support.hpp"

namespace {

using namespace dfs_forge;

// Collects named sub-results for one criterion.
class Criterion {
 public:
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass_ = false;
      failures_.push_back(what);
    }
  }
  void note(const std::string& s) { notes_.push_back(s); }
  bool pass() const { return pass_; }
  std::string summary() const {
    std::ostringstream os;
    for (const auto& f : failures_) os << " failed: " << f << ";";
    for (const auto& n : notes_) os << " " << n << ";";
    return os.str();
  }

 private:
  bool pass_ = true;
  std::vector<std::string> failures_;
  std::vector<std::string> notes_;
};

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double max_abs(const Eigen::MatrixXcd& m) { return m.size() ? m.cwiseAbs().maxCoeff() : 0.0; }

void criterion_cnot(Criterion& c) {
  const PulseSequence seq = cnot_sequence();
  const BlockUnitary u = sequence_unitary(seq, Generator::kSwap);
  const double f = f_cnot(u);
  c.expect(f < 1e-10, "f_cnot " + fmt(f));
  const Block5 p0 = cnot_spin0_solution();
  const double m0 = (u.b0.cwiseAbs() - p0.cwiseAbs()).cwiseAbs().maxCoeff();
  c.expect(m0 < 1e-10, "spin-0 moduli " + fmt(m0));
  c.expect(std::abs(std::abs(u.b0(4, 4)) - 1.0) < 1e-10, "fifth diagonal modulus");
  // Leaked block moduli must each be one of the closed-form values.
  const double r3 = std::sqrt(3.0), r5 = std::sqrt(5.0), r15 = std::sqrt(15.0);
  const std::vector<double> allowed = {0.0, 11.0 / 16, 1.0 / 16, 5 * r3 / 16, r15 / 8, 3 * r5 / 8, 0.25, 1.0};
  double worst = 0.0;
  for (int r = 4; r < 9; ++r)
    for (int k = 4; k < 9; ++k) {
      double d = 1.0;
      for (double a : allowed) d = std::min(d, std::abs(std::abs(u.b1(r, k)) - a));
      worst = std::max(worst, d);
    }
  c.expect(worst < 1e-10, "leaked block moduli " + fmt(worst));
  const Block9 p1 = cnot_spin1_solution();
  const double m1 = (u.b1.cwiseAbs() - p1.cwiseAbs()).cwiseAbs().maxCoeff();
  c.expect(m1 < 1e-10, "spin-1 moduli " + fmt(m1));
  const double phase = std::abs(std::arg(u.b0(0, 0) * std::conj(u.b1(0, 0))));
  c.expect(phase < 1e-10, "phase agreement " + fmt(phase));
  c.expect(seq.size() == 22, "22 pulses");
  c.expect(schedule_time_steps(seq) == 13, "13 time steps");
  c.expect(verify_cnot(seq).pass, "verify_cnot");
  c.note("f_cnot=" + fmt(f));
}

void criterion_local(Criterion& c) {
  const PulseSequence full = cnot_sequence();
  const PulseSequence seq = cnot_local_sequence();
  // The shorter sequence is the full one with four gates removed.
  const double p1 = cnot_power_p1(), p2 = cnot_power_p2();
  std::vector<double> removed;
  std::size_t j = 0;
  for (const PulseGate& g : full.gates) {
    if (j < seq.size() && seq.gates[j] == g) {
      ++j;
    } else {
      removed.push_back(g.power);
    }
  }
  std::sort(removed.begin(), removed.end());
  std::vector<double> want = {p1, p2, -p1, 1 - p2};
  std::sort(want.begin(), want.end());
  c.expect(j == seq.size() && removed.size() == 4 &&
               std::equal(removed.begin(), removed.end(), want.begin(),
                          [](double a, double b) { return std::abs(a - b) < 1e-15; }),
           "removed gates are p1, p2, -p1, 1-p2");
  c.expect(seq.size() == 18, "18 pulses");
  c.expect(schedule_time_steps(seq) == 11, "11 time steps");
  const MakhlinInvariants ref = makhlin_invariants(cnot_matrix());
  c.expect(std::abs(ref.g1) < 1e-12 && std::abs(ref.g2 - 1.0) < 1e-12, "CNOT reference invariants (0, 1)");
  const BlockUnitary u = sequence_unitary(seq);
  const LocalEquivalence le = cnot_local_equivalence(u, 1e-8);
  for (const auto& [name, m] : {std::pair{"spin-0", le.spin0}, std::pair{"spin-1", le.spin1}}) {
    c.expect(std::abs(m.g1) < 1e-8, std::string(name) + " g1 " + fmt(std::abs(m.g1)));
    c.expect(std::abs(m.g2 - 1.0) < 1e-8, std::string(name) + " g2 " + fmt(m.g2));
  }
  c.expect(le.decoupling_residual < 1e-8, "unleaked block decoupled");
  c.note("invariant residual=" + fmt(le.invariant_residual));
}

void criterion_lro(Criterion& c) {
  const PulseSequence seq = lro_sequence();
  const VerifyReport r = verify_lro(seq);
  c.expect(r.objective < 1e-10, "f_lro " + fmt(r.objective));
  const double phi = r.phases.at("phi");
  c.expect(std::abs(std::polar(1.0, phi) - 1.0) < 1e-8, "e^{i phi} = 1");
  const LroSolution s = lro_solution();
  auto gap = [&](const char* name, const Eigen::MatrixXcd& ref) {
    const Eigen::MatrixXcd& m = r.blocks.at(name);
    const double g = (m.cwiseAbs() - ref.cwiseAbs()).cwiseAbs().maxCoeff();
    c.expect(g < 1e-9, std::string(name) + " moduli " + fmt(g));
  };
  gap("d", s.d);
  gap("e", s.e);
  gap("f", s.f);
  gap("g", s.g);
  gap("h", s.h);
  gap("k", s.k);
  const auto& e = r.blocks.at("e");
  const auto& g = r.blocks.at("g");
  const auto& k = r.blocks.at("k");
  c.expect(std::abs(std::abs(e(2, 2)) - 1.0 / 3) < 1e-9, "|e33| = 1/3");
  c.expect(std::abs(std::abs(e(1, 2)) - 2 * std::sqrt(2.0) / 3) < 1e-9, "|e23| = 2 sqrt2/3");
  c.expect(std::abs(std::abs(g(1, 2)) - 4 * std::sqrt(5.0) / 9) < 1e-9, "|g23| = 4 sqrt5/9");
  c.expect(std::abs(std::abs(k(2, 2)) - 1.0) < 1e-9, "|k33| = 1");
  c.expect(std::abs(std::abs(g(0, 1)) - std::sqrt(3.0) / 2) < 1e-9, "|g12| = sqrt3/2");
  const double fh = (r.blocks.at("f").cwiseAbs() - r.blocks.at("h").cwiseAbs()).cwiseAbs().maxCoeff();
  c.expect(fh < 1e-9, "|f| = |h| " + fmt(fh));
  c.expect(r.pulses == 30, "30 pulses");
  c.expect(r.time_steps == 20, "20 time steps");
  c.expect(r.pass, "verify_lro");
  c.note("f_lro=" + fmt(r.objective) + " phi=" + fmt(phi));
}

void criterion_blocks(Criterion& c) {
  std::mt19937_64 rng(20261016);
  std::uniform_int_distribution<int> len(0, 10);
  const TamBasis& basis = tam_basis();
  double worst_s1 = 0, worst_s2 = 0, worst_s3 = 0, worst_blocks = 0;
  for (int t = 0; t < 100; ++t) {
    const PulseSequence seq = testing::random_sequence(rng, static_cast<std::size_t>(len(rng)));
    for (Generator gen : {Generator::kExchange, Generator::kSwap}) {
      const Eigen::MatrixXcd tam = to_tam_basis(testing::sequence_oracle(seq, gen));
      // Every entry outside the sector blocks must vanish.
      Eigen::MatrixXcd off = tam;
      for (const Sector& s : basis.sectors) off.block(s.offset, s.offset, s.size, s.size).setZero();
      worst_blocks = std::max(worst_blocks, max_abs(off));
      auto block = [&](int twice_s, int twice_m) { return sector_block(tam, HalfInteger(twice_s), HalfInteger(twice_m)); };
      for (int m : {0, 2}) worst_s1 = std::max(worst_s1, max_abs(block(2, m) - block(2, -2)));
      for (int m : {-2, 0, 2, 4}) worst_s2 = std::max(worst_s2, max_abs(block(4, m) - block(4, -4)));
      const Complex i{0.0, 1.0};
      const Complex phase = gen == Generator::kExchange
                                ? std::exp(-i * std::numbers::pi * seq.total_power() / 4.0)
                                : Complex{1.0, 0.0};
      for (int m = -6; m <= 6; m += 2) worst_s3 = std::max(worst_s3, std::abs(block(6, m)(0, 0) - phase));
      const BlockUnitary u = sequence_unitary(seq, gen);
      worst_blocks = std::max({worst_blocks, max_abs(block(0, 0) - Eigen::MatrixXcd(u.b0)),
                               max_abs(block(2, -2) - Eigen::MatrixXcd(u.b1)),
                               max_abs(block(4, -4) - Eigen::MatrixXcd(u.b2)), std::abs(block(6, 6)(0, 0) - u.b3_phase)});
    }
  }
  c.expect(worst_s1 < 1e-10, "S=1 blocks agree " + fmt(worst_s1));
  c.expect(worst_s2 < 1e-10, "S=2 blocks agree " + fmt(worst_s2));
  c.expect(worst_s3 < 1e-10, "S=3 phase " + fmt(worst_s3));
  c.expect(worst_blocks < 1e-9, "block products vs oracle " + fmt(worst_blocks));
  c.note("max deviations " + fmt(worst_s1) + "/" + fmt(worst_s2) + "/" + fmt(worst_s3) + "/" + fmt(worst_blocks));
}

void criterion_basis(Criterion& c) {
  const Eigen::MatrixXd v = change_of_basis();
  const double ortho = (v * v.transpose() - Eigen::MatrixXd::Identity(kDim, kDim)).norm();
  c.expect(ortho < 1e-12, "orthonormal " + fmt(ortho));
  const std::array<int, 6> all = {0, 1, 2, 3, 4, 5};
  const std::array<int, 3> a = {0, 1, 2}, b = {3, 4, 5};
  const std::array<int, 2> a12 = {2, 1}, b12 = {3, 4};
  const Eigen::MatrixXcd ops[6] = {spin_squared_operator(6, all), spin_z_operator(6, all),
                                   spin_squared_operator(6, a),   spin_squared_operator(6, b),
                                   spin_squared_operator(6, a12), spin_squared_operator(6, b12)};
  auto ss = [](HalfInteger j) { return j.value() * (j.value() + 1); };
  double worst = 0.0;
  const auto vectors = build_six_qubit_basis();
  for (const BasisVector& bv : vectors) {
    const Eigen::VectorXcd x = bv.amplitudes.cast<Complex>();
    const QuantumNumbers& q = bv.labels;
    const double vals[6] = {ss(q.s_tot), q.sz_tot.value(), ss(q.s_a), ss(q.s_b), ss(q.s_a12), ss(q.s_b12)};
    for (int k = 0; k < 6; ++k) worst = std::max(worst, (ops[k] * x - vals[k] * x).norm());
  }
  c.expect(vectors.size() == 64, "64 vectors");
  c.expect(worst < 1e-10, "eigen residual " + fmt(worst));
  int dims[4] = {0, 0, 0, 0};
  for (const Sector& s : six_qubit_sectors()) dims[s.s_tot.twice / 2] += s.size;
  c.expect(dims[0] == 5 && dims[1] == 27 && dims[2] == 25 && dims[3] == 7, "sector dimensions 5/27/25/7");

  const double r2 = std::sqrt(2.0), r3 = std::sqrt(3.0), r6 = std::sqrt(6.0);
  const std::vector<std::vector<std::pair<const char*, double>>> kets = {
      {{"010", 1 / r2}, {"100", -1 / r2}},
      {{"011", 1 / r2}, {"101", -1 / r2}},
      {{"001", std::sqrt(2.0 / 3)}, {"010", -1 / r6}, {"100", -1 / r6}},
      {{"011", 1 / r6}, {"101", 1 / r6}, {"110", -std::sqrt(2.0 / 3)}},
      {{"000", 1.0}},
      {{"001", 1 / r3}, {"010", 1 / r3}, {"100", 1 / r3}},
      {{"011", 1 / r3}, {"101", 1 / r3}, {"110", 1 / r3}},
      {{"111", 1.0}},
  };
  const auto dfs = build_dfs_basis();
  double amp = 0.0;
  for (std::size_t i = 0; i < 8; ++i) {
    Eigen::VectorXd want = Eigen::VectorXd::Zero(8);
    for (const auto& [ket, value] : kets[i]) want[dfs_ket_index(ket)] = value;
    amp = std::max(amp, (dfs[i].amplitudes - want).cwiseAbs().maxCoeff());
  }
  c.expect(amp < 1e-12, "single-block amplitudes " + fmt(amp));
  c.note("eigen residual=" + fmt(worst));
}

void criterion_rotations(Criterion& c) {
  // Encoded basis listed as (S12 = 1, S12 = 0); see README for the frame.
  auto block = [](const Eigen::Matrix<Complex, 8, 8>& u, int gauge) {
    const int one = gauge == 0 ? 2 : 3, zero = gauge == 0 ? 0 : 1;
    Eigen::Matrix2cd m;
    m << u(one, one), u(one, zero), u(zero, one), u(zero, zero);
    return m;
  };
  const Eigen::Vector3d z(0, 0, 1), n23(std::sqrt(3.0) / 2, 0, -0.5);
  double worst = 0.0, gauge_gap = 0.0, leak = 0.0;
  for (double p : {0.1, 0.37, 0.5, 0.83}) {
    for (int pair : {0, 1}) {
      const auto u = single_dfs_gate(pair, p);
      leak = std::max({leak, u.block<4, 4>(0, 4).cwiseAbs().maxCoeff(), u.block<4, 4>(4, 0).cwiseAbs().maxCoeff()});
      for (int gauge : {0, 1}) {
        const EncodedRotation r = encoded_rotation(block(u, gauge));
        worst = std::max({worst, (r.axis - (pair == 0 ? z : n23)).norm(), std::abs(r.angle - std::numbers::pi * p)});
      }
      gauge_gap = std::max(gauge_gap, max_abs(block(u, 0) - block(u, 1)));
    }
  }
  c.expect(worst < 1e-8, "axis/angle extraction " + fmt(worst));
  c.expect(gauge_gap < 1e-8, "gauge sectors identical " + fmt(gauge_gap));
  c.expect(leak < 1e-12, "no coupling to S=3/2");
  c.note("axes z and (sqrt3/2, 0, -1/2), deviation " + fmt(worst));
}

SearchConfig load_config(const char* name) {
  const auto dir = testing::data_path("");
  return search_config_from_json(read_json_file(testing::data_path(name)), dir);
}

void criterion_ga(Criterion& c) {
  using clock = std::chrono::steady_clock;
  // (a) determinism.
  SearchConfig small;
  small.population_size = 16;
  small.initial_length_min = 6;
  small.initial_length_max = 12;
  small.max_sequence_length = 20;
  small.max_generations = 4;
  small.rng_seed = 2024;
  small.threads = 1;
  SearchConfig threaded = small;
  threaded.threads = 4;
  const SearchResult a1 = evolve(small), a2 = evolve(small), a3 = evolve(threaded);
  c.expect(a1.best.sequence == a2.best.sequence && a1.best.objective == a2.best.objective, "(a) repeat run identical");
  c.expect(a1.best.sequence == a3.best.sequence && a1.best.objective == a3.best.objective,
           "(a) thread count does not matter");

  // (b) elitism.
  SearchConfig eli = small;
  eli.population_size = 8;
  eli.initial_length_min = 4;
  eli.initial_length_max = 8;
  eli.max_sequence_length = 14;
  eli.max_generations = 200;
  const SearchResult e = evolve(eli);
  bool monotone = e.stats.size() == 200;
  for (std::size_t i = 1; i < e.stats.size(); ++i) monotone &= e.stats[i].best_penalized <= e.stats[i - 1].best_penalized;
  c.expect(monotone, "(b) best penalized non-increasing over 200 generations");

  // (c), (d) basin re-convergence from the shipped configs.
  for (const auto& [name, limit_s] : {std::pair{"search_cnot_basin.json", 600.0}, std::pair{"search_lro_basin.json", 1200.0}}) {
    const auto t0 = clock::now();
    const SearchConfig cfg = load_config(name);
    const SearchResult r = evolve(cfg);
    const double secs = std::chrono::duration<double>(clock::now() - t0).count();
    const std::string tag = cfg.target == Target::kCnot ? "(c) cnot basin" : "(d) lro basin";
    c.expect(cfg.population_size == 32 && cfg.max_generations <= 50, tag + " config");
    c.expect(r.best_objective.objective < 1e-6, tag + " objective " + fmt(r.best_objective.objective));
    c.expect(secs < limit_s, tag + " runtime");
    c.note(tag + ": " + fmt(r.best_objective.objective) + " after " + std::to_string(r.generations) + " gen, " +
           fmt(secs) + " s");
  }

  // (e) selection frequencies ∝ 1 / (f + λ·len).
  const double lambda = 1e-4;
  const std::vector<std::pair<double, int>> pool = {{0.1, 20}, {0.2, 25}, {0.05, 30}, {0.5, 22}, {0.02, 40}};
  std::vector<double> w;
  for (const auto& [f, n] : pool) w.push_back(selection_weight(f + lambda * n));
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<double> counts(pool.size(), 0.0);
  const int draws = 100000;
  Rng rng = make_rng(7, 0, 0, 5);
  for (int t = 0; t < draws; ++t) counts[weighted_sample_without_replacement(w, 1, rng)[0]] += 1;
  double stat = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    const double expected = draws * w[i] / total;
    stat += std::pow(counts[i] - expected, 2) / expected;
  }
  const boost::math::chi_squared dist(static_cast<double>(w.size() - 1));
  const double p = boost::math::cdf(boost::math::complement(dist, stat));
  c.expect(p > 0.01, "(e) chi-square p " + fmt(p));
  c.note("(e) chi-square p=" + fmt(p));
}

void criterion_fixed_points(Criterion& c) {
  const BlockUnitary id = BlockUnitary::identity();
  const double fc = f_cnot(id), fl = f_lro(id);
  c.expect(std::abs(fc - 1.0) < 1e-12, "f_cnot(I) " + fmt(fc));
  c.expect(std::abs(fl - (1.0 + std::sqrt(2.0))) < 1e-12, "f_lro(I) " + fmt(fl));
  c.note("f_cnot(I)=" + fmt(fc) + " f_lro(I)=" + fmt(fl));
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* title;
    double budget_s;  // 0: no runtime bound
    std::function<void(Criterion&)> run;
  };
  const std::vector<Entry> entries = {
      {1, "CNOT verification", 1.0, criterion_cnot},
      {2, "locally equivalent CNOT variant", 0.0, criterion_local},
      {3, "leakage-reduction verification", 1.0, criterion_lro},
      {4, "block-structure property suite", 30.0, criterion_blocks},
      {5, "basis suite", 0.0, criterion_basis},
      {6, "encoded rotations", 0.0, criterion_rotations},
      {7, "genetic search properties", 0.0, criterion_ga},
      {8, "objective fixed points", 0.0, criterion_fixed_points},
  };
  int failed = 0;
  for (const Entry& e : entries) {
    Criterion c;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      e.run(c);
    } catch (const std::exception& ex) {
      c.expect(false, std::string("exception: ") + ex.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (e.budget_s > 0) c.expect(secs < e.budget_s, "runtime over " + fmt(e.budget_s) + " s");
    if (!c.pass()) ++failed;
    std::printf("[%s] criterion %d: %s (%.2f s)%s\n", c.pass() ? "PASS" : "FAIL", e.id, e.title, secs,
                c.summary().c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(entries.size()) - failed, entries.size());
  return failed == 0 ? 0 : 1;
}
