#include "arbor/verify.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <random>
#include <thread>

#include "arbor/error.hpp"
#include "arbor/hypersurface.hpp"
#include "arbor/link.hpp"
#include "arbor/poset.hpp"
#include "arbor/quiver.hpp"
#include "arbor/sheaf.hpp"
#include "arbor/tree_enum.hpp"

namespace arbor {

namespace {

struct Outcome {
  std::size_t checks = 0;
  std::vector<std::string> failures;

  void expect(bool ok, const std::string& what) {
    ++checks;
    if (!ok) failures.push_back(what);
  }
};

using Unit = std::function<Outcome()>;

std::string tree_name(const Tree& t) {
  if (t.size() == 1) return t.label(0);
  std::string out;
  for (const Edge& e : t.edges()) {
    if (!out.empty()) out += ',';
    out += t.label(e.u) + "-" + t.label(e.v);
  }
  return out;
}

std::string rooted_name(const RootedTree& rt) { return tree_name(rt.tree()) + "@" + rt.tree().label(rt.root()); }

const std::vector<std::size_t> kFreeCounts = {1, 1, 1, 2, 3, 6};
const std::vector<std::size_t> kRootedCounts = {1, 1, 2, 4, 9, 20};

std::size_t binomial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// --- enumeration

Outcome check_enumeration(int n) {
  Outcome o;
  const std::string at = "n=" + std::to_string(n) + ": ";
  o.expect(free_tree_classes(n).size() == kFreeCounts[n - 1], at + "free tree count");
  o.expect(rooted_tree_classes(n).size() == kRootedCounts[n - 1], at + "rooted tree count");
  const ArborealPoset p = enumerate_poset(path_tree(n));
  const std::size_t expected = (std::size_t{1} << (n + 1)) - n - 2;
  o.expect(p.size() == expected, at + "path poset has " + std::to_string(p.size()) + " elements");
  if (n >= 2) {
    o.expect(an_poset_isomorphism(n).verified(), at + "path poset is not the truncated subset poset");
    const auto f = f_vector(p);
    bool match = f.size() == static_cast<std::size_t>(n - 1);
    for (std::size_t d = 0; match && d < f.size(); ++d) match = f[d] == binomial(n + 1, d + 1);
    o.expect(match, at + "cell f-vector differs from the skeleton of the simplex");
  }
  return o;
}

// --- poset

Outcome check_poset(const Tree& t) {
  Outcome o;
  const std::string at = tree_name(t) + ": ";
  const ArborealPoset p = enumerate_poset(t);
  o.expect(p.element(0) == identity_correspondence(t) && p.rank(0) == 0, at + "minimum is not the identity");
  for (std::size_t i = 1; i < p.size(); ++i) o.expect(p.less(0, i) && p.rank(i) > 0, at + "not above the minimum");
  for (auto [a, b] : p.covers()) o.expect(p.rank(b) == p.rank(a) + 1, at + "cover does not raise rank by one");
  for (std::size_t i = 0; i < p.size(); ++i)
    o.expect(upset_isomorphism(p, i).verified(), at + "up-set of " + describe(t, p.element(i)));
  return o;
}

// --- homology

Outcome check_homology(const Tree& t, const Field& field) {
  Outcome o;
  const int n = static_cast<int>(t.size());
  const BettiNumbers b = betti(order_complex(enumerate_poset(t), true), field);
  const bool ok = n == 1 ? b.is_sphere(-1) : b.is_bouquet(n - 2, n);
  o.expect(ok, tree_name(t) + ": " + b.to_string());
  return o;
}

// --- cells

Outcome check_cells(const Tree& t, const Field& field) {
  Outcome o;
  const ArborealPoset p = enumerate_poset(t);
  const RegularityReport r = check_cell_regularity(p, field);
  for (int v : r.violators) o.failures.push_back(tree_name(t) + ": cell " + describe(t, p.element(v)) + " is not regular");
  o.checks += r.checked;
  o.expect(check_intersection_property(p), tree_name(t) + ": intersection property");
  return o;
}

// --- hypersurface

Outcome check_hypersurface(const Tree& t) {
  Outcome o;
  const ArborealPoset p = enumerate_poset(t);
  for (const Correspondence& c : p.elements()) {
    const std::string at = tree_name(t) + " " + describe(t, c) + ": ";
    for (Vertex chart : members(c.s())) {
      const LPoint x = sample(t, c, chart);
      o.expect(classify(t, x) == c, at + "round trip from chart " + t.label(chart));
      o.expect(classify(t, dilate(x, Rational(3, 2))) == c, at + "dilation");
      for (Vertex g = 0; g < static_cast<Vertex>(t.size()); ++g)
        if (auto y = transport(t, x, g)) o.expect(classify(t, *y) == c, at + "chart change to " + t.label(g));
      for (Vertex r = 0; r < static_cast<Vertex>(t.size()); ++r) {
        const RootedTree rt(t, r);
        o.expect(in_hypersurface(rt, front_projection(rt, x)), at + "front projection misses H for root " + t.label(r));
      }
    }
  }
  return o;
}

// --- sheaf

Outcome check_sheaf(const RootedTree& rt, const Field& field) {
  Outcome o;
  const std::string at = rooted_name(rt) + ": ";
  const Tree& t = rt.tree();
  const auto n = static_cast<Vertex>(rt.size());
  std::vector<FunctorComplex> P, S;
  for (Vertex a = 0; a < n; ++a) {
    P.push_back(generator_P(rt, a));
    S.push_back(generator_S(rt, a));
  }
  const ExitPoset& X = P[0].poset();
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) {
      const std::string pair = t.label(a) + "," + t.label(b);
      GradedDims want;
      if (rt.leq(a, b)) want[0] = 1;
      o.expect(rhom(P[a], P[b], field) == want, at + "rhom(P, P) at " + pair);
      o.expect(natural_transformations(P[a].terms[0], P[b].terms[0]).size() == want.size(),
               at + "natural transformations at " + pair);
      GradedDims delta;
      if (a == b) delta[0] = 1;
      o.expect(rhom(P[b], S[a], field) == delta, at + "rhom(P, S) at " + t.label(b) + "," + t.label(a));
    }
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b)
      for (Vertex c = 0; c < n; ++c) {
        if (!rt.leq(a, b) || !rt.leq(b, c)) continue;
        const auto e = compose(rt, a, b, c, canonical_generator(rt, a, b), canonical_generator(rt, b, c));
        o.expect(e == canonical_generator(rt, a, c), at + "generators do not compose at " + t.label(a) + "," +
                                                         t.label(b) + "," + t.label(c));
      }
  const std::vector<bool> everything(X.size(), true);
  GradedDims k0;
  k0[0] = 1;
  o.expect(sections_over(everything, constant_functor(rt), field) == k0, at + "sections of the constant sheaf");
  for (Vertex a = 0; a < n; ++a) {
    const std::string v = t.label(a);
    o.expect(sections_over(everything, P[a], field).empty(), at + "sections of P_" + v);
    // S_a is k exactly where s_a = '-' and no s_g = '-' for g < a.
    const auto h = stalk_cohomology(S[a], field);
    bool support_ok = true;
    for (std::size_t s = 0; s < X.size(); ++s) {
      bool inside = X.stratum(s)[a] < 0;
      for (Vertex g : members(rt.down_set(a) & ~bit(a)))
        if (X.stratum(s)[g] < 0) inside = false;
      GradedDims want;
      if (inside) want[0] = 1;
      if (h[s] != want) support_ok = false;
    }
    o.expect(support_ok, at + "stalks of S_" + v);
    std::vector<long> unit(n, 0), below(n, 0);
    unit[a] = 1;
    for (Vertex g : members(rt.down_set(a))) below[g] = 1;
    o.expect(k0_decompose(rt, S[a]) == unit, at + "K0 of S_" + v);
    o.expect(k0_decompose(rt, P[a]) == below, at + "K0 of P_" + v);
  }
  try {
    k0_decompose(rt, constant_functor(rt));
    o.expect(false, at + "constant sheaf decomposed");
  } catch (const Error& e) {
    o.expect(e.kind() == ErrorKind::kNotInSpan, at + "constant sheaf: " + e.what());
  }
  if (n <= 3) {
    for (Vertex a = 0; a < n; ++a)
      for (std::size_t s = 0; s < X.size(); ++s)
        for (Vertex i = 0; i < n; ++i) {
          if (X.stratum(s)[i] != 0) continue;
          bool want = rt.leq(i, a);
          for (Vertex g : members(rt.down_set(a)))
            if (X.stratum(s)[g] < 0) want = false;
          const std::string where = X.stratum(s).to_string() + " axis " + t.label(i) + " for P_" + t.label(a);
          o.expect(codirection_test(rt, P[a], {X.stratum(s), i, +1}, field) == want, at + "+codirection " + where);
          o.expect(!codirection_test(rt, P[a], {X.stratum(s), i, -1}, field), at + "-codirection " + where);
        }
  }
  return o;
}

// --- quiver

Representation random_representation(const TreeQuiver& q, std::mt19937& rng) {
  std::uniform_int_distribution<int> dim(0, 2), entry(-2, 2);
  Representation m;
  for (std::size_t v = 0; v < q.size(); ++v) m.dims.push_back(dim(rng));
  for (const auto& a : q.arrows()) {
    Matrix x(m.dims[a.target], m.dims[a.source]);
    for (std::size_t r = 0; r < x.rows(); ++r)
      for (std::size_t c = 0; c < x.cols(); ++c) x.at(r, c) = entry(rng);
    m.maps.push_back(std::move(x));
  }
  return m;
}

std::vector<std::vector<GradedDims>> hom_table(const TreeQuiver& q, const std::vector<PerfectComplex>& xs,
                                               const Field& field) {
  std::vector<std::vector<GradedDims>> table(xs.size(), std::vector<GradedDims>(xs.size()));
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = 0; j < xs.size(); ++j) table[i][j] = hom(q, xs[i], xs[j], field);
  return table;
}

Outcome check_quiver(const RootedTree& rt, const Field& field, unsigned seed) {
  Outcome o;
  const std::string at = rooted_name(rt) + ": ";
  const Tree& t = rt.tree();
  const TreeQuiver q(rt);
  const auto n = static_cast<Vertex>(rt.size());
  for (Vertex a = 0; a < n; ++a)
    for (Vertex b = 0; b < n; ++b) {
      const std::string pair = t.label(a) + "," + t.label(b);
      const HomExt pp = hom_ext(q, projective(q, a), projective(q, b), field);
      o.expect(pp == HomExt{rt.leq(a, b) ? 1u : 0u, 0}, at + "hom_ext(P, P) at " + pair);
      const HomExt ss = hom_ext(q, simple(q, a), simple(q, b), field);
      const bool arrow = rt.parent(a) == b;
      o.expect(ss == HomExt{a == b ? 1u : 0u, arrow ? 1u : 0u}, at + "hom_ext(S, S) at " + pair);
      // Cross-model: the sheaf side computes the same graded dimensions.
      GradedDims from_quiver;
      if (ss.hom) from_quiver[0] = ss.hom;
      if (ss.ext) from_quiver[1] = ss.ext;
      o.expect(rhom(generator_S(rt, a), generator_S(rt, b), field) == from_quiver, at + "rhom(S, S) at " + pair);
      o.expect(hom(q, std_resolution(q, simple(q, a)), std_resolution(q, simple(q, b)), field) == from_quiver,
               at + "resolved hom(S, S) at " + pair);
    }
  for (Vertex a = 0; a < n; ++a) {
    const PerfectComplex m = minimize(std_resolution(q, projective(q, a)));
    o.expect(m.lo == 0 && m.terms == std::vector<std::vector<Vertex>>{{a}}, at + "minimal model of P_" + t.label(a));
  }
  std::mt19937 rng(seed);
  for (int trial = 0; trial < 100; ++trial) {
    const Representation m = random_representation(q, rng), k = random_representation(q, rng);
    const HomExt he = hom_ext(q, m, k, field);
    long euler = 0;
    for (Vertex v = 0; v < n; ++v) euler += static_cast<long>(m.dims[v] * k.dims[v]);
    for (const auto& a : q.arrows()) euler -= static_cast<long>(m.dims[a.source] * k.dims[a.target]);
    o.expect(static_cast<long>(he.hom) - static_cast<long>(he.ext) == euler, at + "Euler form, trial " +
                                                                                  std::to_string(trial));
  }

  const ArborealPoset poset = enumerate_poset(t);
  for (const Correspondence& c : poset.elements()) {
    const std::string where = at + describe(t, c) + ": ";
    try {
      local_model_compare(rt, c, field).assert_ok(t);
      o.expect(true, "");
    } catch (const Error& e) {
      o.expect(false, where + e.what());
    }
    const TreeQuiver rq = quotient_quiver(q, c);
    const QuotientTree r = quotient_tree(t, c);
    for (Vertex a = 0; a < n; ++a) {
      if (!contains(c.s(), a)) {
        o.expect(minimize(restriction(q, c, std_resolution(q, projective(q, a)))).empty(),
                 where + "P_" + t.label(a) + " survives");
      } else if (a != rt.root() && contains(c.s(), rt.parent(a)) && r.q[a] == r.q[rt.parent(a)]) {
        const PerfectComplex image = restriction(q, c, std_resolution(q, simple(q, a)));
        o.expect(is_acyclic(rq, image, field) && minimize(image).empty(), where + "S_" + t.label(a) + " survives");
      }
    }
    o.expect(corner_order_agrees(q, c, fiber_minima(q, c)), where + "fiber minima break the corner order");
    // Restricting in two steps agrees with restricting along the composite.
    if (n <= 3) {
      std::vector<PerfectComplex> gens;
      for (Vertex a = 0; a < n; ++a) gens.push_back(std_resolution(q, projective(q, a)));
      const ArborealPoset upper = enumerate_poset(r.tree);
      for (const Correspondence& c2 : upper.elements()) {
        const Correspondence both = compose(t, c, r, c2);
        std::vector<PerfectComplex> two_step, direct;
        for (const PerfectComplex& g : gens) {
          two_step.push_back(minimize(restriction(rq, c2, restriction(q, c, g))));
          direct.push_back(minimize(restriction(q, both, g)));
        }
        o.expect(hom_table(quotient_quiver(rq, c2), two_step, field) ==
                     hom_table(quotient_quiver(q, both), direct, field),
                 where + "composite with " + describe(r.tree, c2));
      }
    }
  }
  return o;
}

struct Task {
  std::size_t suite;
  Unit run;
};

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"enumeration", "poset", "homology", "cells",
                                                 "hypersurface", "sheaf", "quiver"};
  return names;
}

bool VerifyReport::ok() const {
  return std::all_of(suites.begin(), suites.end(), [](const SuiteResult& s) { return s.ok(); });
}

io::Json VerifyReport::to_json() const {
  io::Json j;
  j["max_size"] = max_size;
  j["field"] = field;
  io::Json list = io::Json::array();
  for (const SuiteResult& s : suites) {
    io::Json e;
    e["suite"] = s.name;
    e["checks"] = s.checks;
    e["failures"] = s.failures;
    e["ok"] = s.ok();
    list.push_back(std::move(e));
  }
  j["suites"] = std::move(list);
  j["ok"] = ok();
  return j;
}

VerifyReport run_verify(const VerifyOptions& options) {
  if (options.max_size < 1 || options.max_size > kMaxVerifySize)
    throw Error(ErrorKind::kTooLarge, "max size must lie in 1.." + std::to_string(kMaxVerifySize));
  std::vector<std::size_t> chosen;
  for (const std::string& s : options.suites) {
    auto it = std::find(suite_names().begin(), suite_names().end(), s);
    if (it == suite_names().end()) throw Error(ErrorKind::kParse, "unknown suite '" + s + "'");
    chosen.push_back(static_cast<std::size_t>(it - suite_names().begin()));
  }
  if (options.suites.empty())
    for (std::size_t i = 0; i < suite_names().size(); ++i) chosen.push_back(i);
  std::sort(chosen.begin(), chosen.end());
  chosen.erase(std::unique(chosen.begin(), chosen.end()), chosen.end());

  const Field field = options.field;
  std::vector<Task> tasks;
  for (std::size_t suite : chosen) {
    const std::string& name = suite_names()[suite];
    for (int n = 1; n <= options.max_size; ++n) {
      if (name == "enumeration") {
        tasks.push_back({suite, [n] { return check_enumeration(n); }});
        continue;
      }
      if (name == "sheaf" || name == "quiver") {
        if (n > kMaxCategorySize) continue;
        unsigned index = 0;
        for (RootedTree& rt : rooted_tree_classes(n)) {
          const unsigned seed = static_cast<unsigned>(n * 1000 + index++);
          if (name == "sheaf")
            tasks.push_back({suite, [rt, field] { return check_sheaf(rt, field); }});
          else
            tasks.push_back({suite, [rt, field, seed] { return check_quiver(rt, field, seed); }});
        }
        continue;
      }
      for (Tree& t : free_tree_classes(n)) {
        if (name == "poset") tasks.push_back({suite, [t] { return check_poset(t); }});
        if (name == "homology") tasks.push_back({suite, [t, field] { return check_homology(t, field); }});
        if (name == "cells") tasks.push_back({suite, [t, field] { return check_cells(t, field); }});
        if (name == "hypersurface") tasks.push_back({suite, [t] { return check_hypersurface(t); }});
      }
    }
  }

  std::vector<Outcome> results(tasks.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < tasks.size(); i = next++) {
      try {
        results[i] = tasks[i].run();
      } catch (const std::exception& e) {
        results[i].checks += 1;
        results[i].failures.push_back(std::string("exception: ") + e.what());
      }
    }
  };
  const unsigned workers = std::max(1u, std::min<unsigned>(options.workers, static_cast<unsigned>(tasks.size())));
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();

  VerifyReport report;
  report.max_size = options.max_size;
  report.field = field.name();
  for (std::size_t suite : chosen) {
    SuiteResult s{suite_names()[suite], 0, {}};
    for (std::size_t i = 0; i < tasks.size(); ++i) {
      if (tasks[i].suite != suite) continue;
      s.checks += results[i].checks;
      s.failures.insert(s.failures.end(), results[i].failures.begin(), results[i].failures.end());
    }
    std::sort(s.failures.begin(), s.failures.end());
    report.suites.push_back(std::move(s));
  }
  return report;
}

}  // namespace arbor
