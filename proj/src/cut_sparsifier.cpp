#include "dyncut/cut_sparsifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dyncut {

CutSparsifier::CutSparsifier(const DynamicMultiGraph& g,
                             const SparsifierConfig& cfg)
    : cfg_(cfg), rng_(cfg.seed) {
  if (!(cfg.epsilon > 0 && cfg.epsilon < 1))
    throw std::invalid_argument("epsilon must lie in (0,1)");
  if (cfg.scale_num <= 0 || cfg.scale_den <= 0)
    throw std::invalid_argument("output scale must be positive");
  std::size_t n = cfg.n_hint ? cfg.n_hint : std::max<std::size_t>(2, g.num_vertices());
  double lg = std::log2(2.0 * static_cast<double>(n));
  rho_ = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(lg)));
  depth_ = std::max<std::size_t>(
      1, static_cast<std::size_t>(std::ceil(2.0 * cfg.c_xi * cfg.c * lg * lg /
                                            (cfg.epsilon * cfg.epsilon))));
  for (auto v : g.vertices()) {
    g_.ensure_vertex(v);
    h_.ensure_vertex(v);
  }
  auto hs = g.edges();
  std::sort(hs.begin(), hs.end(), [&](EdgeHandle a, EdgeHandle b) {
    return g.stamp(a) < g.stamp(b);
  });
  for (auto h : hs) {
    GraphUpdate u = EdgeInsert{g.endpoint(h, 0), g.endpoint(h, 1), g.cap(h), h};
    apply(u);
  }
  totals_ = {};
  g_.reset_counters();
  h_.reset_counters();
}

std::size_t CutSparsifier::edge_budget() const {
  return classes_.size() * (rho_ + 1) * depth_ * g_.num_vertices();
}

double CutSparsifier::capacity_ratio() const {
  Cap lo = 0, hi = 0;
  for (auto h : h_.edges()) {
    Cap c = h_.cap(h);
    if (lo == 0 || c < lo) lo = c;
    hi = std::max(hi, c);
  }
  return lo == 0 ? 1.0 : static_cast<double>(hi) / static_cast<double>(lo);
}

void CutSparsifier::add_class() {
  Class c;
  for (std::size_t i = 0; i < rho_; ++i) {
    DynamicMultiGraph gi;
    for (auto v : g_.vertices()) gi.ensure_vertex(v);
    c.bundles.emplace_back(std::move(gi), depth_);
  }
  for (auto v : g_.vertices()) c.top.ensure_vertex(v);
  c.coin.resize(rho_);
  classes_.push_back(std::move(c));
}

const DynamicMultiGraph& CutSparsifier::level_graph(const Class& c,
                                                    std::size_t i) const {
  return i < rho_ ? c.bundles[i].graph() : c.top;
}

bool CutSparsifier::in_remainder(const Class& c, std::size_t i,
                                 EdgeHandle h) const {
  const auto& b = c.bundles[i - 1];
  return b.graph().has_edge(h) && !b.in_bundle(h);
}

Cap CutSparsifier::class_capacity(const Class& c, EdgeHandle h) const {
  for (std::size_t i = 1; i <= rho_; ++i) {
    const auto& b = c.bundles[i - 1];
    if (!b.graph().has_edge(h)) return 0;
    if (b.in_bundle(h)) return Cap{1} << (i - 1);
  }
  return c.top.has_edge(h) ? Cap{1} << rho_ : 0;
}

Cap CutSparsifier::raw_capacity(EdgeHandle h) const {
  Cap total = 0;
  for (std::size_t d = 0; d < classes_.size(); ++d)
    total += class_capacity(classes_[d], h) << d;
  return total;
}

Cap CutSparsifier::scaled(Cap raw) const {
  if (raw == 0) return 0;
  return (raw * cfg_.scale_num + cfg_.scale_den - 1) / cfg_.scale_den;
}

void CutSparsifier::run_class(Class& c, UpdateBatch batch,
                              std::vector<EdgeHandle>& touched) {
  for (std::size_t i = 1; i <= rho_; ++i) {
    auto& b = c.bundles[i - 1];
    auto& coins = c.coin[i - 1];
    // remainder membership before the batch, for every edge whose
    // membership changed at some point during it
    std::vector<std::pair<EdgeHandle, bool>> changed;
    auto note = [&](EdgeHandle h, bool was) {
      for (auto& [e, w] : changed)
        if (e == h) return;
      changed.push_back({h, was});
    };
    const VertexSplit* split = nullptr;
    for (auto& u : batch) {
      if (auto* s = std::get_if<VertexSplit>(&u)) split = s;
      if (auto* ins = std::get_if<EdgeInsert>(&u)) touched.push_back(ins->handle);
      if (auto* del = std::get_if<EdgeDelete>(&u)) touched.push_back(del->handle);
      auto rec = b.apply(u);
      for (auto h : rec.inserted) touched.push_back(h);
      for (auto h : rec.deleted) touched.push_back(h);
      for (auto h : rec.outside_entered) note(h, false);
      for (auto h : rec.outside_left) note(h, true);
    }
    const auto& next = level_graph(c, i);
    UpdateBatch out, dels, ins;
    if (split) {
      VertexSplit s{split->v, split->new_vertex, {}};
      for (auto h : split->moved)
        if (next.has_edge(h)) s.moved.push_back(h);
      out.push_back(std::move(s));
    }
    for (auto [h, was] : changed) {
      bool now = in_remainder(c, i, h);
      if (was == now) continue;
      if (h >= coins.size()) coins.resize(h + 1, -1);
      if (was) {
        coins[h] = -1;
        if (next.has_edge(h)) dels.push_back(EdgeDelete{h});
      } else {
        std::int8_t coin = static_cast<std::int8_t>(rng_() >> 63);
        ++coins_drawn_;
        coins[h] = coin;
        if (coin) {
          const auto& src = b.graph();
          ins.push_back(EdgeInsert{src.endpoint(h, 0), src.endpoint(h, 1), 1, h});
        }
      }
    }
    for (auto& u : dels) out.push_back(std::move(u));
    for (auto& u : ins) out.push_back(std::move(u));
    batch = std::move(out);
  }
  for (auto& u : batch) {
    if (auto* ins = std::get_if<EdgeInsert>(&u)) touched.push_back(ins->handle);
    if (auto* del = std::get_if<EdgeDelete>(&u)) touched.push_back(del->handle);
    c.top.apply(u);
  }
}

SparsifierRecourse CutSparsifier::apply(GraphUpdate& u) {
  std::vector<EdgeHandle> touched;
  SparsifierRecourse rec;
  if (auto* ins = std::get_if<EdgeInsert>(&u)) {
    g_.apply(u);
    EdgeHandle h = ins->handle;
    touched.push_back(h);
    Cap cap = ins->cap;
    std::size_t top_bit = 0;
    while ((cap >> top_bit) > 1) ++top_bit;
    while (classes_.size() <= top_bit) add_class();
    for (std::size_t d = 0; d < classes_.size(); ++d)
      if ((cap >> d) & 1)
        run_class(classes_[d], {EdgeInsert{ins->u, ins->v, 1, h}}, touched);
  } else if (auto* del = std::get_if<EdgeDelete>(&u)) {
    EdgeHandle h = del->handle;
    DYNCUT_CHECK(g_.has_edge(h), "sparsifier: delete of absent edge");
    Cap cap = g_.cap(h);
    g_.apply(u);
    touched.push_back(h);
    for (std::size_t d = 0; d < classes_.size(); ++d)
      if ((cap >> d) & 1) run_class(classes_[d], {EdgeDelete{h}}, touched);
  } else {
    auto& s = std::get<VertexSplit>(u);
    g_.apply(u);
    for (auto& c : classes_) {
      VertexSplit cs{s.v, s.new_vertex, {}};
      for (auto h : s.moved)
        if (c.bundles[0].graph().has_edge(h)) cs.moved.push_back(h);
      run_class(c, {cs}, touched);
    }
    VertexSplit hs{s.v, s.new_vertex, {}};
    for (auto h : s.moved)
      if (h_.has_edge(h)) hs.moved.push_back(h);
    GraphUpdate hu = hs;
    h_.apply(hu);
    rec.batch.push_back(std::move(hu));
  }

  std::sort(touched.begin(), touched.end());
  touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
  UpdateBatch ins;
  for (auto h : touched) {
    Cap want = g_.has_edge(h) ? scaled(raw_capacity(h)) : 0;
    Cap have = h_.has_edge(h) ? h_.cap(h) : 0;
    if (want == have) continue;
    if (have) {
      GraphUpdate d = EdgeDelete{h};
      h_.apply(d);
      rec.batch.push_back(d);
    }
    if (want) {
      ins.push_back(EdgeInsert{g_.endpoint(h, 0), g_.endpoint(h, 1), want, h});
    }
    if (have && want)
      ++rec.reweighted;
    else if (want)
      ++rec.inserted;
    else
      ++rec.deleted;
  }
  for (auto& e : ins) {
    h_.apply(e);
    rec.batch.push_back(e);
  }
  totals_.inserted += rec.inserted;
  totals_.deleted += rec.deleted;
  totals_.reweighted += rec.reweighted;
  return rec;
}

void CutSparsifier::validate() const {
  for (std::size_t d = 0; d < classes_.size(); ++d) {
    const auto& c = classes_[d];
    for (auto h : g_.edges()) {
      bool member = (g_.cap(h) >> d) & 1;
      DYNCUT_CHECK(c.bundles[0].graph().has_edge(h) == member,
                   "sparsifier: class membership");
    }
    for (std::size_t i = 1; i <= rho_; ++i) {
      c.bundles[i - 1].validate();
      const auto& next = level_graph(c, i);
      const auto& coins = c.coin[i - 1];
      for (auto h : c.bundles[i - 1].graph().edges()) {
        std::int8_t coin = h < coins.size() ? coins[h] : -1;
        if (in_remainder(c, i, h)) {
          DYNCUT_CHECK(coin >= 0, "sparsifier: remainder edge without a coin");
          DYNCUT_CHECK(next.has_edge(h) == (coin == 1), "sparsifier: coin disagrees with sample");
        } else {
          DYNCUT_CHECK(coin < 0, "sparsifier: stale coin");
        }
      }
      for (auto h : next.edges())
        DYNCUT_CHECK(in_remainder(c, i, h), "sparsifier: sample outside the remainder");
    }
  }
  for (auto h : g_.edges()) {
    Cap want = scaled(raw_capacity(h));
    Cap have = h_.has_edge(h) ? h_.cap(h) : 0;
    DYNCUT_CHECK(want == have, "sparsifier: output capacity");
    if (have) {
      DYNCUT_CHECK(h_.endpoint(h, 0) == g_.endpoint(h, 0) &&
                       h_.endpoint(h, 1) == g_.endpoint(h, 1),
                   "sparsifier: output endpoints");
    }
  }
  DYNCUT_CHECK(h_.num_edges() <= g_.num_edges(), "sparsifier: output not a subgraph");
  for (auto h : h_.edges())
    DYNCUT_CHECK(g_.has_edge(h), "sparsifier: output edge missing from input");
}

}  // namespace dyncut
