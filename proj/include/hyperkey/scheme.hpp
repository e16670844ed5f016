#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "hyperkey/capacity.hpp"
#include "hyperkey/gf2.hpp"
#include "hyperkey/hypergraph.hpp"
#include "hyperkey/rational.hpp"
#include "hyperkey/subset.hpp"

namespace hyperkey {

class SchemeError : public std::runtime_error {
 public:
  explicit SchemeError(const std::string& msg)
      : std::runtime_error("SchemeError: " + msg) {}
};

class InfeasiblePacking : public std::runtime_error {
 public:
  explicit InfeasiblePacking(const std::string& msg)
      : std::runtime_error("InfeasiblePacking: " + msg) {}
};

class DisconnectedTree : public std::runtime_error {
 public:
  explicit DisconnectedTree(const std::string& msg)
      : std::runtime_error("DisconnectedTree: " + msg) {}
};

// One GF(2) bit variable of the blocked source: bit `bit` of edge `edge`
// at time `t`.
struct Term {
  int edge = 0;
  int bit = 0;
  int t = 0;
};

// n i.i.d. realizations of an integer-weight source, each edge contributing
// weight(e) independent bits per time unit. Variable order is (t, edge, bit).
class BitSource {
 public:
  static BitSource create(const Hypergraph& hg, int n) {
    if (n < 1) throw SchemeError("block length must be positive");
    if (!hg.all_integer_weights())
      throw SchemeError(
          "simulation needs integer edge weights; scale the source first");
    BitSource src(hg, n);
    return src;
  }

  const Hypergraph& hypergraph() const { return hg_; }
  int block_length() const { return n_; }
  long bits_per_time() const { return bits_per_time_; }
  long total_bits() const { return bits_per_time_ * n_; }

  long bit_index(const Term& term) const {
    if (term.edge < 0 || term.edge >= static_cast<int>(hg_.edges().size()))
      throw SchemeError("term references edge index out of range");
    if (term.bit < 0 || term.bit >= edge_bits_[term.edge])
      throw SchemeError("term bit index exceeds the edge weight");
    if (term.t < 0 || term.t >= n_)
      throw SchemeError("term time index exceeds the block length");
    return static_cast<long>(term.t) * bits_per_time_ + edge_offset_[term.edge] +
           term.bit;
  }

  // mask of every bit variable user i observes
  Gf2Row observed_mask(int user) const {
    Gf2Row mask = gf2_zero_row(total_bits());
    for (int e = 0; e < static_cast<int>(hg_.edges().size()); ++e) {
      if (!vs_contains(hg_.edges()[e].verts, user)) continue;
      for (int t = 0; t < n_; ++t)
        for (int b = 0; b < edge_bits_[e]; ++b)
          gf2_flip(mask, bit_index(Term{e, b, t}));
    }
    return mask;
  }

 private:
  BitSource(const Hypergraph& hg, int n) : hg_(hg), n_(n) {
    long offset = 0;
    for (const Edge& e : hg_.edges()) {
      mpz_class w = e.weight.num();
      if (!w.fits_sint_p()) throw SchemeError("edge weight too large to simulate");
      edge_offset_.push_back(offset);
      edge_bits_.push_back(static_cast<int>(w.get_si()));
      offset += edge_bits_.back();
    }
    bits_per_time_ = offset;
  }

  Hypergraph hg_;
  int n_;
  long bits_per_time_ = 0;
  std::vector<long> edge_offset_;
  std::vector<int> edge_bits_;
};

struct MessageSpec {
  int sender = 0;
  std::vector<Term> terms;
};

// Non-interactive linear scheme: public messages are GF(2) combinations of
// the sender's own observed bits, the key is a GF(2) function of the source.
class LinearScheme {
 public:
  static LinearScheme build(BitSource source, std::vector<MessageSpec> messages,
                            std::vector<std::vector<Term>> key_specs) {
    LinearScheme s(std::move(source));
    for (const MessageSpec& spec : messages) {
      if (spec.sender < 1 || spec.sender > s.src_.hypergraph().num_vertices())
        throw SchemeError("message sender is not a user");
      Gf2Row row = gf2_zero_row(s.src_.total_bits());
      for (const Term& term : spec.terms) {
        long idx = s.src_.bit_index(term);
        if (!vs_contains(s.src_.hypergraph().edges()[term.edge].verts,
                         spec.sender))
          throw SchemeError("message uses a bit its sender cannot observe");
        gf2_flip(row, idx);
      }
      s.message_rows_.push_back(std::move(row));
      s.message_specs_.push_back(spec);
    }
    for (const std::vector<Term>& spec : key_specs) {
      Gf2Row row = gf2_zero_row(s.src_.total_bits());
      for (const Term& term : spec) gf2_flip(row, s.src_.bit_index(term));
      s.key_rows_.push_back(std::move(row));
      s.key_specs_.push_back(spec);
    }
    return s;
  }

  const BitSource& source() const { return src_; }
  const std::vector<Gf2Row>& message_rows() const { return message_rows_; }
  const std::vector<Gf2Row>& key_rows() const { return key_rows_; }
  const std::vector<MessageSpec>& message_specs() const { return message_specs_; }
  const std::vector<std::vector<Term>>& key_specs() const { return key_specs_; }

 private:
  explicit LinearScheme(BitSource src) : src_(std::move(src)) {}

  BitSource src_;
  std::vector<Gf2Row> message_rows_;
  std::vector<Gf2Row> key_rows_;
  std::vector<MessageSpec> message_specs_;
  std::vector<std::vector<Term>> key_specs_;
};

struct RecoverabilityResult {
  bool recoverable = true;
  int failing_user = 0;  // first user that cannot compute the key, 0 if none
};

// Every user must be able to compute every key row from their own observed
// bits plus all public messages. Observed unit vectors can cancel any
// observed coordinate, so the check reduces to span membership after masking
// the observed coordinates away.
inline RecoverabilityResult check_recoverability(const LinearScheme& scheme) {
  const BitSource& src = scheme.source();
  const int m = src.hypergraph().num_vertices();
  for (int user = 1; user <= m; ++user) {
    Gf2Row observed = src.observed_mask(user);
    Gf2Basis hidden_span;  // messages restricted to the hidden coordinates
    for (const Gf2Row& row : scheme.message_rows()) {
      Gf2Row masked = row;
      for (std::size_t w = 0; w < masked.size(); ++w) masked[w] &= ~observed[w];
      hidden_span.insert(std::move(masked));
    }
    for (const Gf2Row& key : scheme.key_rows()) {
      Gf2Row masked = key;
      for (std::size_t w = 0; w < masked.size(); ++w) masked[w] &= ~observed[w];
      if (!hidden_span.contains(masked))
        return RecoverabilityResult{false, user};
    }
  }
  return RecoverabilityResult{};
}

// Perfect secrecy for uniform independent source bits: the key bits must be
// uniform and independent of the transcript, i.e. the joint row space has
// rank equal to rank(messages) + number of key rows.
inline bool check_perfect_secrecy(const LinearScheme& scheme) {
  Gf2Basis joint;
  for (const Gf2Row& row : scheme.message_rows()) joint.insert(row);
  int message_rank = joint.rank();
  for (const Gf2Row& row : scheme.key_rows()) joint.insert(row);
  return joint.rank() ==
         message_rank + static_cast<int>(scheme.key_rows().size());
}

struct SchemeVerdict {
  bool recoverable = false;
  int failing_user = 0;
  bool secret = false;
  long key_bits = 0;
  long discussion_bits = 0;
  Rational key_rate;
  Rational discussion_rate;

  bool verified() const { return recoverable && secret; }
};

inline SchemeVerdict scheme_rates(const LinearScheme& scheme) {
  // re-check the sender-support invariant the builder enforced
  for (const MessageSpec& spec : scheme.message_specs())
    for (const Term& t : spec.terms)
      if (!vs_contains(scheme.source().hypergraph().edges()[t.edge].verts,
                       spec.sender))
        throw SchemeError("message uses a bit its sender cannot observe");
  SchemeVerdict v;
  RecoverabilityResult rec = check_recoverability(scheme);
  v.recoverable = rec.recoverable;
  v.failing_user = rec.failing_user;
  v.secret = check_perfect_secrecy(scheme);
  v.key_bits = static_cast<long>(scheme.key_rows().size());
  v.discussion_bits = static_cast<long>(scheme.message_rows().size());
  long n = scheme.source().block_length();
  v.key_rate = Rational(v.key_bits, n);
  v.discussion_rate = Rational(v.discussion_bits, n);
  return v;
}

// ---------------------------------------------------------------------------
// Tree-packing protocol

// Turns a feasible fractional tree packing of an integer-weight PIN into a
// concrete scheme: multiplicities are scaled integral by the common
// denominator L (one block of L time units), every tree instance gets fresh
// edge bits, and each instance broadcasts |V|-2 XORs that let every user
// recover the designated key-edge bit.
inline LinearScheme tree_protocol(const Hypergraph& hg,
                                  const TreePacking& packing) {
  if (!hg.is_pin()) throw NotPin("tree protocol applies to PIN sources");
  const int m = hg.num_vertices();

  // integral multiplicities
  for (const Rational& e : packing.eta)
    if (e.sign() < 0) throw InfeasiblePacking("negative multiplicity");
  mpz_class scale = denominator_lcm(packing.eta.begin(), packing.eta.end());
  if (!scale.fits_sint_p()) throw SchemeError("packing denominator too large");
  const int n = static_cast<int>(scale.get_si());
  std::vector<long> copies(packing.trees.size());
  for (std::size_t j = 0; j < packing.trees.size(); ++j) {
    Rational scaled = packing.eta[j] * Rational(scale);
    if (!scaled.is_integer() || !scaled.num().fits_slong_p())
      throw SchemeError("scaled multiplicity is not a small integer");
    copies[j] = scaled.num().get_si();
  }

  // capacity check, in bits over the block: uses(B) <= c(B) * n
  std::map<VertexSet, Rational> capacity;
  for (std::size_t p = 0; p < packing.pairs.size(); ++p)
    capacity[packing.pairs[p]] = packing.capacities[p];
  WeightFunction wf = hg.weight_function();
  for (const auto& [set, w] : wf.entries)
    if (capacity.find(set) == capacity.end() || capacity[set] != w)
      throw InfeasiblePacking("packing pairs disagree with the source support");
  std::map<VertexSet, long> uses;
  for (std::size_t j = 0; j < packing.trees.size(); ++j)
    for (int p : packing.trees[j]) uses[packing.pairs[p]] += copies[j];
  for (const auto& [set, count] : uses) {
    Rational budget = capacity[set] * Rational(n);
    if (Rational(count) > budget)
      throw InfeasiblePacking("pair " + vs_str(set) + " over capacity");
  }

  // free bit slots per pair, ordered (t, edge, bit)
  std::map<VertexSet, std::vector<Term>> slots;
  for (int t = 0; t < n; ++t)
    for (int e = 0; e < static_cast<int>(hg.edges().size()); ++e) {
      long w = hg.edges()[e].weight.num().get_si();
      for (int b = 0; b < w; ++b)
        slots[hg.edges()[e].verts].push_back(Term{e, b, t});
    }
  std::map<VertexSet, std::size_t> next_slot;

  BitSource src = BitSource::create(hg, n);
  std::vector<MessageSpec> messages;
  std::vector<std::vector<Term>> keys;

  for (std::size_t j = 0; j < packing.trees.size(); ++j) {
    // validate the tree: m-1 pair edges forming a spanning tree
    std::vector<VertexSet> tree_pairs;
    for (int p : packing.trees[j]) tree_pairs.push_back(packing.pairs[p]);
    std::sort(tree_pairs.begin(), tree_pairs.end(),
              [](VertexSet a, VertexSet b) {
                return vs_vertices(a) < vs_vertices(b);  // lexicographic
              });
    if (static_cast<int>(tree_pairs.size()) != m - 1)
      throw DisconnectedTree("tree " + std::to_string(j) + " has wrong size");
    std::vector<std::vector<std::pair<int, VertexSet>>> adj(m + 1);
    for (VertexSet pair : tree_pairs) {
      std::vector<int> vs = vs_vertices(pair);
      adj[vs[0]].emplace_back(vs[1], pair);
      adj[vs[1]].emplace_back(vs[0], pair);
    }

    for (long copy = 0; copy < copies[j]; ++copy) {
      // allocate one fresh bit per tree edge
      std::map<VertexSet, Term> bit_of;
      for (VertexSet pair : tree_pairs) {
        std::size_t& cursor = next_slot[pair];
        if (cursor >= slots[pair].size())
          throw InfeasiblePacking("ran out of bits on pair " + vs_str(pair));
        bit_of[pair] = slots[pair][cursor++];
      }

      // root at the smaller endpoint of the smallest pair; that pair's bit
      // becomes the key
      VertexSet key_pair = tree_pairs.front();
      int root = vs_vertices(key_pair)[0];
      std::vector<int> parent(m + 1, 0);
      std::vector<VertexSet> parent_edge(m + 1, 0);
      std::vector<int> order{root};
      std::vector<bool> seen(m + 1, false);
      seen[root] = true;
      for (std::size_t head = 0; head < order.size(); ++head) {
        int u = order[head];
        for (const auto& [v, pair] : adj[u]) {
          if (seen[v]) continue;
          seen[v] = true;
          parent[v] = u;
          parent_edge[v] = pair;
          order.push_back(v);
        }
      }
      if (order.size() != static_cast<std::size_t>(m))
        throw DisconnectedTree("tree " + std::to_string(j) +
                               " does not span the vertex set");

      // every non-key tree edge (u -> v) is announced by u as
      // bit(edge) xor bit(u's own upward edge)
      for (int v : order) {
        if (v == root) continue;
        VertexSet pair = parent_edge[v];
        if (pair == key_pair) continue;
        int u = parent[v];
        VertexSet up = u == root ? key_pair : parent_edge[u];
        MessageSpec msg;
        msg.sender = u;
        msg.terms = {bit_of[pair], bit_of[up]};
        messages.push_back(std::move(msg));
      }
      keys.push_back({bit_of[key_pair]});
    }
  }
  return LinearScheme::build(std::move(src), std::move(messages),
                             std::move(keys));
}

}  // namespace hyperkey
