#include <algorithm>
#include <array>
#include <utility>
#include <vector>

#include "punn/evolution.hpp"

namespace punn {

namespace {

struct LinkRef {
  std::size_t node;
  std::size_t index;  // input index or output index
  bool output;
};

std::vector<LinkRef> collect_links(const Network& net, bool present) {
  std::vector<LinkRef> links;
  for (std::size_t j = 0; j < net.hidden_count(); ++j) {
    const auto& node = net.node(j);
    for (std::size_t i = 0; i < net.inputs(); ++i) {
      if (node.has_input(i) == present) links.push_back({j, i, false});
    }
    for (std::size_t l = 0; l < net.outputs(); ++l) {
      if (node.has_output(l) == present) links.push_back({j, l, true});
    }
  }
  return links;
}

LinkRef take_random(std::vector<LinkRef>& links, Rng& rng) {
  const std::size_t at = uniform_index(rng, links.size());
  const LinkRef picked = links[at];
  links[at] = links.back();
  links.pop_back();
  return picked;
}

// Connection operators use the same 1..2 range as the node operators.
constexpr std::size_t kLinkOpMin = 1;
constexpr std::size_t kLinkOpMax = 2;

}  // namespace

bool add_nodes(Network& net, Rng& rng, const EaParams& params) {
  const std::size_t wanted = uniform_count(rng, params.node_op_min, params.node_op_max);
  const std::size_t room =
      net.hidden_count() < params.max_hidden ? params.max_hidden - net.hidden_count() : 0;
  const std::size_t count = std::min(wanted, room);
  const NodeShape shape{net.inputs(), net.classes(), params.weights, params.link_density};
  for (std::size_t n = 0; n < count; ++n) net.add_node(random_hidden_node(rng, shape));
  return count > 0;
}

bool delete_nodes(Network& net, Rng& rng, const EaParams& params) {
  const std::size_t wanted = uniform_count(rng, params.node_op_min, params.node_op_max);
  const std::size_t count = std::min(wanted, net.hidden_count() - 1);
  for (std::size_t n = 0; n < count; ++n) net.remove_node(uniform_index(rng, net.hidden_count()));
  return count > 0;
}

bool add_connections(Network& net, Rng& rng, const EaParams& params) {
  auto absent = collect_links(net, false);
  const std::size_t wanted = uniform_count(rng, kLinkOpMin, kLinkOpMax);
  std::size_t added = 0;
  for (; added < wanted && !absent.empty(); ++added) {
    const LinkRef link = take_random(absent, rng);
    const double w = uniform_real(rng, params.weights.lo, params.weights.hi);
    auto& node = net.node(link.node);
    if (link.output) {
      node.set_output(link.index, w);
    } else {
      node.set_input(link.index, w);
    }
  }
  return added > 0;
}

bool delete_connections(Network& net, Rng& rng, const EaParams& /*params*/) {
  auto present = collect_links(net, true);
  const std::size_t wanted = uniform_count(rng, kLinkOpMin, kLinkOpMax);
  std::size_t removed = 0;
  for (; removed < wanted && !present.empty(); ++removed) {
    const LinkRef link = take_random(present, rng);
    auto& node = net.node(link.node);
    if (link.output) {
      node.clear_output(link.index);
    } else {
      node.clear_input(link.index);
    }
  }
  return removed > 0;
}

void fuse_node_pair(Network& net, std::size_t a, std::size_t b, Rng& rng,
                    const WeightInterval& weights) {
  const HiddenNode& na = net.node(a);
  const HiddenNode& nb = net.node(b);
  HiddenNode fused(net.inputs(), net.outputs());
  for (std::size_t i = 0; i < net.inputs(); ++i) {
    const bool in_a = na.has_input(i);
    const bool in_b = nb.has_input(i);
    if (in_a && in_b) {
      fused.set_input(i, weights.clamp(0.5 * (na.exponents[i] + nb.exponents[i])));
    } else if (in_a || in_b) {
      if (bernoulli(rng, 0.5)) fused.set_input(i, in_a ? na.exponents[i] : nb.exponents[i]);
    }
  }
  for (std::size_t l = 0; l < net.outputs(); ++l) {
    if (na.has_output(l) || nb.has_output(l)) {
      fused.set_output(l, weights.clamp(na.coefficients[l] + nb.coefficients[l]));
    }
  }
  net.node(a) = std::move(fused);
  net.remove_node(b);
}

bool fuse_nodes(Network& net, Rng& rng, const EaParams& params) {
  const std::size_t m = net.hidden_count();
  if (m < 2) return false;
  const std::size_t a = uniform_index(rng, m);
  std::size_t b = uniform_index(rng, m - 1);
  if (b >= a) ++b;
  fuse_node_pair(net, a, b, rng, params.weights);
  return true;
}

Individual structural_mutation(const Individual& ind, Rng& rng, const EaParams& params) {
  using Op = bool (*)(Network&, Rng&, const EaParams&);
  static constexpr std::array<Op, 5> kOps{add_nodes, delete_nodes, add_connections,
                                          delete_connections, fuse_nodes};
  const double t = temperature(ind);

  Individual out;
  out.net = ind.net;
  out.origin = ind.origin;
  bool fired = false;
  for (Op op : kOps) {
    if (bernoulli(rng, t)) {
      op(out.net, rng, params);
      fired = true;
    }
  }
  if (!fired) kOps[uniform_index(rng, kOps.size())](out.net, rng, params);
  return out;
}

}  // namespace punn
