#include <algorithm>
#include <map>
#include <numeric>

#include "wlh/wldim.hpp"

namespace wlh::wldim {

namespace {

using Signature = std::vector<std::int64_t>;

/// Canonical renumbering: equal signatures share a color, colors follow signature order.
std::vector<int> compress(const std::vector<Signature>& sig, int* classes) {
  std::vector<std::size_t> order(sig.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return sig[i] < sig[j]; });
  std::vector<int> out(sig.size());
  int next = -1;
  for (std::size_t k = 0; k < order.size(); ++k) {
    if (k == 0 || sig[order[k]] != sig[order[k - 1]]) ++next;
    out[order[k]] = next;
  }
  *classes = next + 1;
  return out;
}

/// One side of a joint refinement: a structure whose colors are read through an optional relabeling.
struct Side {
  const Structure* s;
  const std::vector<int>* relabel;
  int color(int a, int b) const {
    const int c = s->color(a, b);
    return relabel ? (*relabel)[c] : c;
  }
};

std::vector<int> decode(std::size_t idx, int n, int m) {
  std::vector<int> x(m);
  for (int i = m - 1; i >= 0; --i) x[i] = static_cast<int>(idx % n), idx /= n;
  return x;
}

/// Joint refinement of the m-tuples of every side; colors of side t occupy [t N, (t + 1) N).
/// on_round sees each coloring (including the atomic one) and may stop the run by returning false.
struct JointRun {
  std::vector<int> color;
  std::vector<int> classes_per_round;
  int rounds = 0;
  bool stopped = false;
};

JointRun joint_refine(const std::vector<Side>& sides, int n, int m,
                      const std::function<bool(const std::vector<int>&, int)>& on_round) {
  const std::size_t N = tuple_count(n, m);
  const std::size_t total = N * sides.size();
  std::vector<std::size_t> stride(m);
  for (int i = m - 1, st = 1; i >= 0; --i, st *= n) stride[i] = static_cast<std::size_t>(st);

  JointRun run;
  std::vector<Signature> sig(total);
  parallel_for(total, [&](std::size_t lo, std::size_t hi) {
    for (std::size_t t = lo; t < hi; ++t) {
      const auto& side = sides[t / N];
      const auto x = decode(t % N, n, m);
      Signature s;
      s.reserve(static_cast<std::size_t>(m) * m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s.push_back(side.color(x[i], x[j]));
      // Equality pattern: some structures reuse one color on and off the diagonal.
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) s.push_back(x[i] == x[j]);
      sig[t] = std::move(s);
    }
  });
  int classes = 0;
  run.color = compress(sig, &classes);
  run.classes_per_round.push_back(classes);
  if (!on_round(run.color, classes)) {
    run.stopped = true;
    return run;
  }

  for (;;) {
    parallel_for(total, [&](std::size_t lo, std::size_t hi) {
      std::vector<std::int64_t> items;
      for (std::size_t t = lo; t < hi; ++t) {
        const std::size_t base = t - t % N;
        const std::size_t idx = t % N;
        const auto& side = sides[t / N];
        const auto x = decode(idx, n, m);
        Signature s{run.color[t]};
        if (m == 1) {
          items.clear();
          const std::int64_t r = classes + 1;
          for (int g = 0; g < n; ++g) {
            const std::int64_t out = side.color(x[0], g), in = side.color(g, x[0]);
            items.push_back((out * 1'000'003 + in) * r + run.color[base + g]);
          }
          std::sort(items.begin(), items.end());
          s.insert(s.end(), items.begin(), items.end());
        } else {
          std::vector<Signature> rows(n);
          for (int g = 0; g < n; ++g) {
            auto& row = rows[g];
            row.resize(m);
            for (int i = 0; i < m; ++i) {
              const std::size_t moved = idx + (static_cast<std::size_t>(g) - x[i]) * stride[i];
              row[i] = run.color[base + moved];
            }
          }
          std::sort(rows.begin(), rows.end());
          for (const auto& row : rows) s.insert(s.end(), row.begin(), row.end());
        }
        sig[t] = std::move(s);
      }
    });
    int next_classes = 0;
    auto next = compress(sig, &next_classes);
    if (next_classes == classes) break;
    run.color = std::move(next);
    classes = next_classes;
    ++run.rounds;
    run.classes_per_round.push_back(classes);
    if (!on_round(run.color, classes)) {
      run.stopped = true;
      return run;
    }
  }
  return run;
}

bool histograms_equal(const std::vector<int>& color, std::size_t N, int classes) {
  std::vector<std::int64_t> h(classes, 0);
  for (std::size_t t = 0; t < N; ++t) ++h[color[t]];
  for (std::size_t t = N; t < 2 * N; ++t) --h[color[t]];
  return std::all_of(h.begin(), h.end(), [](std::int64_t v) { return v == 0; });
}

/// 2-dim refinement of two translation-invariant structures on residues:
/// d(delta) -> (d(delta), multiset over g of (d(g), d(delta - g))).
EquivalenceResult cayley_equivalent(const Structure& x, const Structure& y, const std::vector<int>& inv) {
  const int n = x.n;
  EquivalenceResult res;
  res.cayley_path = true;
  std::vector<Signature> sig(2 * static_cast<std::size_t>(n));
  for (int d = 0; d < n; ++d) {
    sig[d] = {x.residue[d], d == 0};
    sig[n + d] = {inv[y.residue[d]], d == 0};
  }
  int classes = 0;
  auto color = compress(sig, &classes);
  for (;;) {
    const bool same = histograms_equal(color, n, classes);
    res.classes_per_round.emplace_back(classes, same);
    if (!same) {
      res.reason = "color histograms differ after round " + std::to_string(res.rounds);
      return res;
    }
    parallel_for(2 * static_cast<std::size_t>(n), [&](std::size_t lo, std::size_t hi) {
      for (std::size_t t = lo; t < hi; ++t) {
        const std::size_t base = t - t % n;
        const int d = static_cast<int>(t % n);
        Signature s;
        s.reserve(n + 1);
        for (int g = 0; g < n; ++g)
          s.push_back(static_cast<std::int64_t>(color[base + g]) * classes + color[base + (d - g + n) % n]);
        std::sort(s.begin(), s.end());
        s.insert(s.begin(), color[t]);
        sig[t] = std::move(s);
      }
    });
    int next_classes = 0;
    auto next = compress(sig, &next_classes);
    if (next_classes == classes) break;
    color = std::move(next);
    classes = next_classes;
    ++res.rounds;
  }
  res.equivalent = true;
  return res;
}

}  // namespace

int Structure::colors() const {
  const auto& v = residue.empty() ? pair : residue;
  return v.empty() ? 0 : *std::max_element(v.begin(), v.end()) + 1;
}

Structure from_config(const cc::CoherentConfiguration& x) {
  Structure s;
  s.n = x.size();
  s.pair.assign(x.partition().cell_of.begin(), x.partition().cell_of.end());
  return s;
}

Structure from_graph(const klein::Graph& g) {
  Structure s;
  s.n = g.n;
  s.pair.assign(static_cast<std::size_t>(g.n) * g.n, 2);
  for (int v = 0; v < g.n; ++v) s.pair[static_cast<std::size_t>(v) * g.n + v] = 0;
  for (auto [u, w] : g.edges) s.pair[static_cast<std::size_t>(u) * g.n + w] = s.pair[static_cast<std::size_t>(w) * g.n + u] = 1;
  return s;
}

Structure from_sring(const sring::SRing& a) {
  Structure s;
  s.n = a.n;
  s.residue = a.class_of;
  return s;
}

Structure from_pair_colors(int n, std::vector<int> colors) {
  if (n < 1 || colors.size() != static_cast<std::size_t>(n) * n)
    fail(ErrorKind::MalformedInput, "pair colors need n^2 entries");
  if (std::any_of(colors.begin(), colors.end(), [](int c) { return c < 0; }))
    fail(ErrorKind::MalformedInput, "pair colors must be non-negative");
  Structure s;
  s.n = n;
  s.pair = std::move(colors);
  return s;
}

std::uint64_t tuple_count(int n, int m) {
  std::uint64_t out = 1;
  for (int i = 0; i < m; ++i) {
    if (out > UINT64_MAX / static_cast<std::uint64_t>(std::max(n, 1))) return UINT64_MAX;
    out *= static_cast<std::uint64_t>(n);
  }
  return out;
}

std::size_t tuple_index(int n, const std::vector<int>& x) {
  std::size_t idx = 0;
  for (int v : x) idx = idx * n + v;
  return idx;
}

TupleColoring wl_m(const Structure& s, int m, std::uint64_t budget) {
  if (m < 1) fail(ErrorKind::BadParams, "m must be at least 1");
  if (tuple_count(s.n, m) > budget)
    fail(ErrorKind::BudgetExceeded, std::to_string(s.n) + "^" + std::to_string(m) + " tuples exceed the budget");
  auto run = joint_refine({Side{&s, nullptr}}, s.n, m, [](const std::vector<int>&, int) { return true; });
  TupleColoring c;
  c.m = m;
  c.n = s.n;
  c.color = std::move(run.color);
  c.rounds = run.rounds;
  c.classes_per_round = std::move(run.classes_per_round);
  return c;
}

std::vector<int> projection(const TupleColoring& c, int k) {
  if (k < 1 || k > c.m) fail(ErrorKind::BadParams, "projection arity must lie in 1..m");
  const std::size_t K = tuple_count(c.n, k), tail = tuple_count(c.n, c.m - k);
  std::vector<Signature> sig(K);
  for (std::size_t y = 0; y < K; ++y) {
    Signature s(c.color.begin() + y * tail, c.color.begin() + (y + 1) * tail);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    sig[y] = std::move(s);
  }
  int classes = 0;
  return compress(sig, &classes);
}

cc::RelationPartition pair_partition(const TupleColoring& c) {
  if (c.m < 2) fail(ErrorKind::BadParams, "pair partition needs m >= 2");
  std::vector<std::int64_t> labels(static_cast<std::size_t>(c.n) * c.n);
  for (int a = 0; a < c.n; ++a)
    for (int b = 0; b < c.n; ++b) {
      std::vector<int> x(c.m, b);
      x[0] = a;
      labels[static_cast<std::size_t>(a) * c.n + b] = c.color[tuple_index(c.n, x)];
    }
  return cc::RelationPartition::from_labels(c.n, labels);
}

EquivalenceResult wl_m_equivalent(const Structure& x, const Structure& y, const std::vector<int>& phi, int m,
                                  std::uint64_t budget) {
  EquivalenceResult res;
  if (m < 1) fail(ErrorKind::BadParams, "m must be at least 1");
  if (x.n != y.n) {
    res.reason = "point counts differ";
    return res;
  }
  // phi only has to match the colors that occur; graph structures share one alphabet whether or not
  // every color is used.
  auto used = [](const Structure& s) {
    std::vector<char> u(s.colors(), 0);
    if (s.is_cayley())
      for (int c : s.residue) u[c] = 1;
    else
      for (int c : s.pair) u[c] = 1;
    return u;
  };
  const auto ux = used(x), uy = used(y);
  if (std::count(ux.begin(), ux.end(), 1) != std::count(uy.begin(), uy.end(), 1)) {
    res.reason = "color counts differ";
    return res;
  }
  const int cx = x.colors(), cy = y.colors();
  std::vector<int> inv(cy, -1);
  bool bijective = static_cast<int>(phi.size()) >= cx;
  for (int c = 0; bijective && c < cx; ++c) {
    if (!ux[c]) continue;
    bijective = phi[c] >= 0 && phi[c] < cy && uy[phi[c]] && inv[phi[c]] < 0;
    if (bijective) inv[phi[c]] = c;
  }
  if (!bijective) {
    res.reason = "phi is not a bijection of the colors";
    return res;
  }
  if (m == 2 && x.is_cayley() && y.is_cayley()) return cayley_equivalent(x, y, inv);
  if (tuple_count(x.n, m) > budget)
    fail(ErrorKind::BudgetExceeded, std::to_string(x.n) + "^" + std::to_string(m) + " tuples exceed the budget");

  const std::size_t N = tuple_count(x.n, m);
  auto run = joint_refine({Side{&x, nullptr}, Side{&y, &inv}}, x.n, m, [&](const std::vector<int>& color, int classes) {
    const bool same = histograms_equal(color, N, classes);
    res.classes_per_round.emplace_back(classes, same);
    return same;
  });
  res.rounds = run.rounds;
  if (run.stopped) {
    res.reason = "color histograms differ after round " + std::to_string(run.rounds);
    return res;
  }
  res.equivalent = true;
  return res;
}

}  // namespace wlh::wldim
