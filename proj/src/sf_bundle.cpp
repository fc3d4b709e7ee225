#include "dyncut/sf_bundle.hpp"

#include <algorithm>

namespace dyncut {

namespace {
constexpr std::uint32_t kAbsent = 0xffffffffu;
}

SFBundle::SFBundle(DynamicMultiGraph g, std::size_t depth) : depth_(depth) {
  DYNCUT_CHECK(depth >= 1, "bundle depth must be positive");
  for (auto v : g.vertices()) g_.ensure_vertex(v);
  auto hs = g.edges();
  std::sort(hs.begin(), hs.end(), [&](EdgeHandle a, EdgeHandle b) {
    return g.stamp(a) < g.stamp(b);
  });
  for (auto h : hs) {
    GraphUpdate u = EdgeInsert{g.endpoint(h, 0), g.endpoint(h, 1), g.cap(h), h};
    apply(u);
  }
}

std::uint32_t SFBundle::state(EdgeHandle h) const {
  return g_.has_edge(h) ? static_cast<std::uint32_t>(layer_of(h)) : kAbsent;
}

void SFBundle::touch(EdgeHandle h) {
  if (h >= touch_epoch_.size()) touch_epoch_.resize(h + 1, 0);
  if (touch_epoch_[h] == epoch_) return;
  touch_epoch_[h] = epoch_;
  before_.push_back({h, state(h)});
}

void SFBundle::set_layer(EdgeHandle h, std::size_t k) {
  touch(h);
  if (h >= layer_of_.size()) layer_of_.resize(h + 1, 0);
  bool was = layer_of_[h] != 0, now = k != 0;
  layer_of_[h] = static_cast<std::uint32_t>(k);
  if (was && !now) --bundle_size_;
  if (!was && now) ++bundle_size_;
}

BundleRecourse SFBundle::apply(GraphUpdate& u) {
  ++epoch_;
  before_.clear();
  BundleRecourse rec;
  if (auto* ins = std::get_if<EdgeInsert>(&u)) {
    g_.apply(u);
    EdgeHandle h = ins->handle;
    if (h >= touch_epoch_.size()) touch_epoch_.resize(h + 1, 0);
    touch_epoch_[h] = epoch_;
    before_.push_back({h, kAbsent});
    insert(h);
  } else if (auto* del = std::get_if<EdgeDelete>(&u)) {
    DYNCUT_CHECK(g_.has_edge(del->handle), "bundle: delete of absent edge");
    touch(del->handle);
    erase(del->handle);
  } else {
    auto& s = std::get<VertexSplit>(u);
    g_.apply(u);
    rec.splits = 1;
    drain(1, {}, &s);
  }
  auto in_b = [](std::uint32_t st) { return st != kAbsent && st > 0; };
  auto out = [](std::uint32_t st) { return st == 0; };
  for (auto [h, was] : before_) {
    auto now = state(h);
    if (!in_b(was) && in_b(now)) rec.inserted.push_back(h);
    if (in_b(was) && !in_b(now)) rec.deleted.push_back(h);
    if (!out(was) && out(now)) rec.outside_entered.push_back(h);
    if (out(was) && !out(now)) rec.outside_left.push_back(h);
  }
  return rec;
}

void SFBundle::insert(EdgeHandle h) {
  for (std::size_t k = 1; k <= depth_; ++k) {
    if (k > layers_.size()) layers_.emplace_back();
    auto r = layers_[k - 1].insert(g_, h);
    if (!r.inserted.empty()) {
      set_layer(h, k);
      return;
    }
  }
  set_layer(h, 0);
}

void SFBundle::erase(EdgeHandle h) {
  drain(1, {h}, nullptr);
  set_layer(h, 0);
  g_.delete_edge(h);
}

void SFBundle::drain(std::size_t from, std::vector<EdgeHandle> pending,
                     const VertexSplit* split_first) {
  for (std::size_t k = from; k <= layers_.size(); ++k) {
    auto& layer = layers_[k - 1];
    std::vector<EdgeHandle> absorbed;
    if (split_first) {
      auto r = layer.split(g_, *split_first);
      for (auto e : r.inserted) absorbed.push_back(e);
    }
    for (auto e : pending) {
      if (!layer.contains(e)) continue;
      auto r = layer.erase(g_, e);
      for (auto e2 : r.inserted) absorbed.push_back(e2);
    }
    for (auto e : absorbed) {
      // a split may reconnect through an edge that is pending removal here
      if (!layer.in_forest(e)) continue;
      set_layer(e, k);
      pending.push_back(e);
    }
  }
}

std::vector<EdgeHandle> SFBundle::bundle_edges() const {
  std::vector<EdgeHandle> out;
  for (auto h : g_.edges())
    if (in_bundle(h)) out.push_back(h);
  return out;
}

std::vector<EdgeHandle> SFBundle::non_bundle_edges() const {
  std::vector<EdgeHandle> out;
  for (auto h : g_.edges())
    if (!in_bundle(h)) out.push_back(h);
  return out;
}

void SFBundle::validate() const {
  std::size_t count = 0;
  for (auto h : g_.edges()) {
    std::size_t lay = layer_of(h);
    if (lay) ++count;
    for (std::size_t k = 1; k <= layers_.size(); ++k) {
      bool member = lay == 0 || lay >= k;
      DYNCUT_CHECK(layers_[k - 1].contains(h) == member, "bundle: layer membership");
      DYNCUT_CHECK(layers_[k - 1].in_forest(h) == (lay == k), "bundle: forest index");
    }
    if (lay == 0)
      DYNCUT_CHECK(layers_.size() == depth_, "bundle: outside edge above an unbuilt layer");
  }
  DYNCUT_CHECK(count == bundle_size_, "bundle: size counter");
  for (const auto& layer : layers_) layer.validate(g_);
}

}  // namespace dyncut
