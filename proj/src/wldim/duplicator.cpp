#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "wlh/construction.hpp"
#include "wlh/wldim.hpp"

namespace wlh::wldim {

namespace {

using sring::Section;
using Key = std::vector<int>;  // sorted ids of principal sections

struct Context {
  const sring::SRing& a;
  const sring::SRing& a0;
  const std::vector<int>& phi;
  const ExplicitSystem& sys;
  const DuplicatorOptions& opts;
  int n;
  std::vector<int> section_id;  // per class of a
  std::vector<Section> sections;
  std::map<Key, cc::Bijection> realized;
  std::map<std::pair<Key, Key>, std::pair<cc::Bijection, cc::Bijection>> corrections;  // h and h^{-1}

  std::vector<Section> to_sections(const Key& k) const {
    std::vector<Section> out;
    for (int id : k) out.push_back(sections[id]);
    return out;
  }

  Key key_of(const std::vector<int>& x) const {
    Key k;
    for (int i : x)
      for (int j : x) k.push_back(section_id[a.class_of[((j - i) % n + n) % n]]);
    std::sort(k.begin(), k.end());
    k.erase(std::unique(k.begin(), k.end()), k.end());
    return k;
  }

  cc::Bijection realize(const mult::InnerMultiplier& m) const {
    try {
      return mult::realize_inner_multiplier(a0, m);
    } catch (const Error& e) {
      if (e.kind() == ErrorKind::NotDecomposable) fail(ErrorKind::RealizationUnavailable, e.what());
      throw;
    }
  }

  const cc::Bijection& value(const Key& k) {
    auto it = realized.find(k);
    if (it == realized.end()) it = realized.emplace(k, realize(sys.value(to_sections(k)))).first;
    return it->second;
  }

  const std::pair<cc::Bijection, cc::Bijection>& correction(const Key& k, const Key& khat) {
    auto it = corrections.find({k, khat});
    if (it == corrections.end()) {
      auto h = realize(sys.correction(to_sections(k), to_sections(khat)));
      cc::Bijection inv(n);
      for (int v = 0; v < n; ++v) inv[h[v]] = v;
      it = corrections.emplace(std::make_pair(k, khat), std::make_pair(std::move(h), std::move(inv))).first;
    }
    return it->second;
  }

  /// Automorphism of the coset-closure scheme taking y to z pointwise, when one exists.
  std::optional<cc::Bijection> h0(const std::vector<int>& y, const std::vector<int>& z) const {
    if (a0.rank() == n) {
      // Group ring: the automorphisms are the translations.
      const int t = ((z[0] - y[0]) % n + n) % n;
      for (std::size_t i = 0; i < y.size(); ++i)
        if ((y[i] + t) % n != z[i]) return std::nullopt;
      cc::Bijection f(n);
      for (int v = 0; v < n; ++v) f[v] = (v + t) % n;
      return f;
    }
    cc::SearchOptions so;
    so.first_only = true;
    so.node_budget = opts.h0_budget;
    for (std::size_t i = 0; i < y.size(); ++i) so.pins.emplace_back(y[i], z[i]);
    auto color = [&](int p, int q) { return a0.class_of[((q - p) % n + n) % n]; };
    auto found = cc::colored_isomorphisms(n, color, color, so);
    if (found.empty()) return std::nullopt;
    return found.front();
  }

  bool related(const std::vector<int>& v, const std::vector<int>& w) const {
    for (std::size_t i = 0; i < v.size(); ++i)
      for (std::size_t j = 0; j < v.size(); ++j)
        if (a.class_of[((w[j] - w[i]) % n + n) % n] != phi[a.class_of[((v[j] - v[i]) % n + n) % n]]) return false;
    return true;
  }
};

std::string tuple_text(const std::vector<int>& x) {
  std::string s = "(";
  for (std::size_t i = 0; i < x.size(); ++i) s += (i ? "," : "") + std::to_string(x[i]);
  return s + ")";
}

}  // namespace

DuplicatorReport run_duplicator(const sring::SRing& a, const sring::SRing& a0, const std::vector<int>& phi,
                                const ExplicitSystem& sys, const DuplicatorOptions& opts) {
  if (a.n != a0.n) fail(ErrorKind::DegreeMismatch, "S-ring and coset closure live on different groups");
  if (static_cast<int>(phi.size()) != a.rank()) fail(ErrorKind::BadParams, "phi must map every class");
  if (opts.m < 1) fail(ErrorKind::BadParams, "m must be at least 1");
  Context ctx{a, a0, phi, sys, opts, a.n, {}, {}, {}, {}};
  const int n = a.n, m = opts.m;
  std::map<Section, int> ids;
  for (int c = 0; c < a.rank(); ++c) {
    const auto s = sring::principal_section(a, a.classes[c]);
    auto [it, fresh] = ids.emplace(s, static_cast<int>(ctx.sections.size()));
    if (fresh) ctx.sections.push_back(s);
    ctx.section_id.push_back(it->second);
  }

  std::vector<std::vector<int>> tuples;
  if (opts.samples == 0) {
    const std::uint64_t total = tuple_count(n, m);
    if (total > 10'000'000) fail(ErrorKind::BudgetExceeded, "exhaustive duplicator run over too many tuples");
    for (std::uint64_t t = 0; t < total; ++t) {
      std::vector<int> x(m);
      std::uint64_t r = t;
      for (int i = m - 1; i >= 0; --i) x[i] = static_cast<int>(r % n), r /= n;
      tuples.push_back(std::move(x));
    }
  } else {
    std::mt19937_64 rng(opts.seed);
    std::uniform_int_distribution<int> pick(0, n - 1);
    for (std::size_t s = 0; s < opts.samples; ++s) {
      std::vector<int> x(m);
      for (int& v : x) v = pick(rng);
      tuples.push_back(std::move(x));
    }
  }

  DuplicatorReport rep;
  rep.m = m;
  std::map<std::vector<int>, std::vector<int>> images;
  std::set<std::vector<int>> image_set;
  auto violation = [&](const std::string& what) {
    ++rep.violations;
    if (!rep.first_violation) rep.first_violation = what;
  };

  for (const auto& x : tuples) {
    ++rep.tuples;
    const Key k = ctx.key_of(x);
    const auto& f = ctx.value(k);
    std::vector<int> fx(m);
    for (int i = 0; i < m; ++i) fx[i] = f[x[i]];
    if (images.emplace(x, fx).second && !image_set.insert(fx).second) rep.f_bijective = false;

    std::vector<char> hit(n, 0);
    std::map<Key, std::optional<cc::Bijection>> h0_cache;
    std::vector<int> xa(x), wa(fx);
    xa.push_back(0);
    wa.push_back(0);
    for (int alpha = 0; alpha < n; ++alpha) {
      ++rep.points_checked;
      xa[m] = alpha;
      const Key khat = ctx.key_of(xa);
      const auto& fhat = ctx.value(khat);
      const auto& [h, h_inv] = ctx.correction(k, khat);
      auto it = h0_cache.find(khat);
      if (it == h0_cache.end()) {
        std::vector<int> y(m), z(m);
        for (int i = 0; i < m; ++i) y[i] = fhat[x[i]], z[i] = h[f[x[i]]];
        it = h0_cache.emplace(khat, ctx.h0(y, z)).first;
      }
      if (!it->second) {
        violation("no automorphism of the coset closure moves x^{f^} to x^{fh} for x = " + tuple_text(x));
        continue;
      }
      const int theta = h_inv[(*it->second)[fhat[alpha]]];
      if (theta != alpha) rep.theta_identity = false;
      if (hit[theta]) rep.theta_bijective = false;
      hit[theta] = 1;
      wa[m] = theta;
      if (!ctx.related(xa, wa)) violation("R(x^f theta(alpha)) != R(x alpha)^phi at x alpha = " + tuple_text(xa));
    }
  }
  rep.realizations = ctx.realized.size();
  return rep;
}

ExplicitSystem identity_system(const sring::SRing& a0) {
  const auto s0 = sring::s0_sections(a0);
  const auto id = mult::identity_multiplier(s0);
  ExplicitSystem sys;
  sys.value = [id](const std::vector<Section>&) { return id; };
  sys.correction = [id](const std::vector<Section>&, const std::vector<Section>&) { return id; };
  return sys;
}

ExplicitSystem instance_system(const construction::HardInstance& inst, const construction::LocalMultiplierSystem& sys,
                               std::optional<Section> corrupt) {
  if (!inst.ex) fail(ErrorKind::SuiteNotApplicable, "explicit system needs an explicit instance");
  const auto* ip = &inst;
  const auto* sp = &sys;
  auto to_keys = [ip](const std::vector<Section>& key) {
    std::vector<mult::PSection> out;
    for (const auto& s : key) out.push_back(mult::to_psection(ip->shape, s));
    std::sort(out.begin(), out.end());
    return out;
  };
  ExplicitSystem out;
  out.value = [ip, sp, to_keys, corrupt](const std::vector<Section>& key) {
    if (corrupt && std::find(key.begin(), key.end(), *corrupt) != key.end())
      return mult::identity_multiplier(ip->ex->s0);
    return mult::to_inner(ip->shape, construction::system_value(*ip, *sp, to_keys(key)), ip->ex->s0);
  };
  out.correction = [ip, sp, to_keys](const std::vector<Section>& k1, const std::vector<Section>& k2) {
    const auto h = construction::system_correction(*ip, *sp, to_keys(k1), to_keys(k2));
    return mult::to_inner(ip->shape, mult::mu_elements(ip->shape, h), ip->ex->s0);
  };
  return out;
}

DuplicatorReport scripted_duplicator(const construction::HardInstance& inst,
                                     const construction::LocalMultiplierSystem& sys, const DuplicatorOptions& opts,
                                     std::optional<Section> corrupt) {
  if (!inst.ex) fail(ErrorKind::SuiteNotApplicable, "the scripted duplicator needs an explicit instance");
  if ((opts.m + 1) * (opts.m + 1) > sys.locality)
    fail(ErrorKind::BadParams, "need (m + 1)^2 <= locality, got m = " + std::to_string(opts.m) + ", locality " +
                                   std::to_string(sys.locality));
  return run_duplicator(inst.ex->fused, inst.ex->base, inst.ex->phi, instance_system(inst, sys, corrupt), opts);
}

}  // namespace wlh::wldim
