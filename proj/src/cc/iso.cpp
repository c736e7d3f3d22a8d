#include <algorithm>
#include <map>
#include <numeric>

#include "wlh/cc.hpp"

namespace wlh::cc {

namespace {

/// Two pair-colorings searched jointly; vertex colors share one dictionary.
class Searcher {
 public:
  Searcher(int n, std::vector<int> mx, std::vector<int> my, const SearchOptions& opts)
      : n_(n), mx_(std::move(mx)), my_(std::move(my)), opts_(opts) {
    int mc = 0;
    for (int c : mx_) mc = std::max(mc, c);
    for (int c : my_) mc = std::max(mc, c);
    C_ = static_cast<std::uint64_t>(mc) + 1;
  }

  std::vector<Bijection> run() {
    auto [cx, cy] = initial();
    search(cx, cy);
    return std::move(found_);
  }

  /// Stable joint coloring of the X side after pins; empty when the sides already disagree.
  std::vector<int> refined_x() {
    auto [cx, cy] = initial();
    if (!refine(cx, cy)) return {};
    return cx;
  }

 private:
  std::pair<std::vector<int>, std::vector<int>> initial() const {
    std::vector<int> cx(n_), cy(n_);
    for (int v = 0; v < n_; ++v) {
      cx[v] = mx_[idx(v, v)];
      cy[v] = my_[idx(v, v)];
    }
    int fresh = static_cast<int>(C_);
    for (auto [a, b] : opts_.pins) {
      if (a < 0 || b < 0 || a >= n_ || b >= n_) fail(ErrorKind::MalformedInput, "pin outside the point set");
      cx[a] = fresh;
      cy[b] = fresh;
      ++fresh;
    }
    return {cx, cy};
  }

  std::size_t idx(int a, int b) const { return static_cast<std::size_t>(a) * n_ + b; }

  bool done() const {
    if (opts_.first_only && !found_.empty()) return true;
    return opts_.limit > 0 && found_.size() >= opts_.limit;
  }

  /// Refines both vertex colorings to a joint stable state; false on a histogram mismatch.
  bool refine(std::vector<int>& cx, std::vector<int>& cy) {
    int count = -1;
    std::vector<std::uint64_t> buf(n_);
    while (true) {
      std::map<std::vector<std::uint64_t>, int> dict;
      std::vector<std::map<std::vector<std::uint64_t>, int>::iterator> slots(2 * n_);
      for (int side = 0; side < 2; ++side) {
        const auto& m = side ? my_ : mx_;
        const auto& c = side ? cy : cx;
        std::uint64_t K = static_cast<std::uint64_t>(2 * n_ + C_ + opts_.pins.size() + 1);
        for (int v = 0; v < n_; ++v) {
          for (int w = 0; w < n_; ++w)
            buf[w] = (static_cast<std::uint64_t>(m[idx(v, w)]) * C_ + m[idx(w, v)]) * K + c[w];
          std::sort(buf.begin(), buf.end());
          std::vector<std::uint64_t> sig;
          sig.reserve(n_ + 1);
          sig.push_back(c[v]);
          sig.insert(sig.end(), buf.begin(), buf.end());
          slots[side * n_ + v] = dict.emplace(std::move(sig), 0).first;
        }
      }
      int id = 0;
      for (auto& [k, val] : dict) val = id++;
      std::vector<int> hist(id, 0);
      for (int v = 0; v < n_; ++v) {
        cx[v] = slots[v]->second;
        cy[v] = slots[n_ + v]->second;
        ++hist[cx[v]];
        --hist[cy[v]];
      }
      for (int h : hist)
        if (h != 0) return false;
      if (id == count) return true;
      count = id;
    }
  }

  void search(std::vector<int> cx, std::vector<int> cy) {
    if (done()) return;
    if (++nodes_ > opts_.node_budget) fail(ErrorKind::BudgetExceeded, "isomorphism search exceeded node budget");
    if (!refine(cx, cy)) return;
    std::vector<int> size(n_ + 1, 0);
    for (int v = 0; v < n_; ++v) ++size[cx[v]];
    int target = -1, v0 = -1;
    for (int v = 0; v < n_; ++v)
      if (size[cx[v]] > 1 && (target < 0 || cx[v] < target)) target = cx[v];
    if (target < 0) {
      Bijection f(n_);
      std::vector<int> ypoint(n_ + 1, -1);
      for (int w = 0; w < n_; ++w) ypoint[cy[w]] = w;
      for (int v = 0; v < n_; ++v) f[v] = ypoint[cx[v]];
      for (int a = 0; a < n_; ++a)
        for (int b = 0; b < n_; ++b)
          if (my_[idx(f[a], f[b])] != mx_[idx(a, b)]) return;
      found_.push_back(std::move(f));
      return;
    }
    for (int v = 0; v < n_; ++v)
      if (cx[v] == target) {
        v0 = v;
        break;
      }
    const int fresh = n_ + 1;
    for (int w = 0; w < n_ && !done(); ++w) {
      if (cy[w] != target) continue;
      std::vector<int> nx = cx, ny = cy;
      nx[v0] = fresh;
      ny[w] = fresh;
      search(std::move(nx), std::move(ny));
    }
  }

  int n_;
  std::vector<int> mx_, my_;
  SearchOptions opts_;
  std::uint64_t C_ = 1;
  std::uint64_t nodes_ = 0;
  std::vector<Bijection> found_;
};

std::vector<int> materialize(int n, const std::function<int(int, int)>& color) {
  std::vector<int> m(static_cast<std::size_t>(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) m[static_cast<std::size_t>(a) * n + b] = color(a, b);
  return m;
}

std::string multiply_decimal(const std::string& x, int k) {
  std::string out;
  int carry = 0;
  for (auto it = x.rbegin(); it != x.rend(); ++it) {
    int d = (*it - '0') * k + carry;
    out.push_back(static_cast<char>('0' + d % 10));
    carry = d / 10;
  }
  while (carry) {
    out.push_back(static_cast<char>('0' + carry % 10));
    carry /= 10;
  }
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Bijection> colored_isomorphisms(int n, const std::function<int(int, int)>& color_x,
                                            const std::function<int(int, int)>& color_y, const SearchOptions& opts) {
  Searcher s(n, materialize(n, color_x), materialize(n, color_y), opts);
  return s.run();
}

bool is_algebraic_iso(const CoherentConfiguration& x, const CoherentConfiguration& y, const CellMap& phi) {
  if (x.size() != y.size() || x.rank() != y.rank() || static_cast<int>(phi.size()) != x.rank()) return false;
  std::vector<char> hit(y.rank(), 0);
  for (int c : phi) {
    if (c < 0 || c >= y.rank() || hit[c]) return false;
    hit[c] = 1;
  }
  for (int t = 0; t < x.rank(); ++t) {
    if (x.is_diagonal(t) != y.is_diagonal(phi[t])) return false;
    if (phi[x.transpose(t)] != y.transpose(phi[t])) return false;
    for (const auto& e : x.structure(t))
      if (y.intersection(phi[e.r], phi[e.s], phi[t]) != e.count) return false;
  }
  return true;
}

std::vector<CellMap> find_algebraic_isos(const CoherentConfiguration& x, const CoherentConfiguration& y,
                                         std::size_t limit) {
  if (x.size() != y.size()) fail(ErrorKind::DegreeMismatch, "configurations have different degrees");
  std::vector<CellMap> out;
  if (x.rank() != y.rank()) return out;
  const int R = x.rank();
  CellMap phi(R, -1);
  std::vector<char> used(R, 0);
  auto cell_size = [](const CoherentConfiguration& z, int s) {
    return z.valency(s) * static_cast<std::int64_t>(z.fibers()[z.source_fiber(s)].size());
  };
  std::function<void(int)> go = [&](int r) {
    if (limit > 0 && out.size() >= limit) return;
    if (r == R) {
      if (is_algebraic_iso(x, y, phi)) out.push_back(phi);
      return;
    }
    for (int c = 0; c < R; ++c) {
      if (used[c] || x.is_diagonal(r) != y.is_diagonal(c) || x.valency(r) != y.valency(c) ||
          cell_size(x, r) != cell_size(y, c))
        continue;
      int tr = x.transpose(r);
      if (tr < r && phi[tr] != y.transpose(c)) continue;
      if (tr == r && y.transpose(c) != c) continue;
      phi[r] = c;
      used[c] = 1;
      bool ok = true;
      // Every triple among assigned cells that involves r.
      for (int a = 0; a <= r && ok; ++a)
        for (int b = 0; b <= r && ok; ++b)
          for (int t = 0; t <= r && ok; ++t) {
            if (a != r && b != r && t != r) continue;
            ok = x.intersection(a, b, t) == y.intersection(phi[a], phi[b], phi[t]);
          }
      if (ok) go(r + 1);
      used[c] = 0;
      phi[r] = -1;
    }
  };
  go(0);
  return out;
}

std::vector<Bijection> find_combinatorial_isos(const CoherentConfiguration& x, const CoherentConfiguration& y,
                                               const CellMap& phi, const SearchOptions& opts) {
  if (x.size() != y.size()) fail(ErrorKind::DegreeMismatch, "configurations have different degrees");
  if (x.rank() != y.rank() || static_cast<int>(phi.size()) != x.rank())
    fail(ErrorKind::DegreeMismatch, "cell map does not match the cell counts");
  const int n = x.size();
  std::vector<int> mx(static_cast<std::size_t>(n) * n), my = y.partition().cell_of;
  for (std::size_t i = 0; i < mx.size(); ++i) mx[i] = phi[x.partition().cell_of[i]];
  Searcher s(n, std::move(mx), std::move(my), opts);
  return s.run();
}

bool is_combinatorial_iso(const CoherentConfiguration& x, const CoherentConfiguration& y, const CellMap& phi,
                          const Bijection& f) {
  const int n = x.size();
  if (y.size() != n || static_cast<int>(f.size()) != n) return false;
  std::vector<char> hit(n, 0);
  for (int v : f) {
    if (v < 0 || v >= n || hit[v]) return false;
    hit[v] = 1;
  }
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (y.cell(f[a], f[b]) != phi[x.cell(a, b)]) return false;
  return true;
}

long double AutGroup::order() const {
  long double o = 1;
  for (int s : orbit_sizes) o *= s;
  return o;
}

std::string AutGroup::order_string() const {
  std::string o = "1";
  for (int s : orbit_sizes) o = multiply_decimal(o, s);
  return o;
}

AutGroup automorphism_group(int n, const std::function<int(int, int)>& color, std::uint64_t node_budget) {
  const std::vector<int> m = materialize(n, color);
  AutGroup g;
  // Base: individualize the least point of the first non-singleton class until the coloring is discrete.
  std::vector<std::vector<int>> candidates;
  std::vector<std::pair<int, int>> pins;
  while (true) {
    SearchOptions o;
    o.pins = pins;
    Searcher s(n, m, m, o);
    std::vector<int> c = s.refined_x();
    std::vector<int> size(2 * n + 2, 0);
    for (int v = 0; v < n; ++v) ++size[c[v]];
    int target = -1;
    for (int v = 0; v < n; ++v)
      if (size[c[v]] > 1 && (target < 0 || c[v] < target)) target = c[v];
    if (target < 0) break;
    std::vector<int> cls;
    for (int v = 0; v < n; ++v)
      if (c[v] == target) cls.push_back(v);
    g.base.push_back(cls.front());
    candidates.push_back(cls);
    pins.emplace_back(cls.front(), cls.front());
  }
  // Deepest level first, so generators of deeper stabilizers are available when closing orbits.
  const int levels = static_cast<int>(g.base.size());
  g.orbit_sizes.assign(levels, 1);
  for (int i = levels - 1; i >= 0; --i) {
    std::vector<std::pair<int, int>> prefix(pins.begin(), pins.begin() + i);
    auto orbit_of = [&](int b) {
      std::vector<char> in(n, 0);
      std::vector<int> q{b};
      in[b] = 1;
      for (std::size_t k = 0; k < q.size(); ++k)
        for (const auto& f : g.generators)
          if (!in[f[q[k]]]) {
            in[f[q[k]]] = 1;
            q.push_back(f[q[k]]);
          }
      return in;
    };
    auto in = orbit_of(g.base[i]);
    for (int w : candidates[i]) {
      if (in[w]) continue;
      SearchOptions o;
      o.pins = prefix;
      o.pins.emplace_back(g.base[i], w);
      o.first_only = true;
      o.node_budget = node_budget;
      Searcher s(n, m, m, o);
      auto f = s.run();
      if (f.empty()) continue;
      g.generators.push_back(f.front());
      in = orbit_of(g.base[i]);
    }
    g.orbit_sizes[i] = static_cast<int>(std::count(in.begin(), in.end(), 1));
  }
  return g;
}

AutGroup automorphism_group(const CoherentConfiguration& x, std::uint64_t node_budget) {
  return automorphism_group(x.size(), [&x](int a, int b) { return x.cell(a, b); }, node_budget);
}

}  // namespace wlh::cc
