#pragma once

#include <future>
#include <optional>
#include <string>
#include <vector>

#include "hyperkey/bounds.hpp"
#include "hyperkey/capacity.hpp"
#include "hyperkey/json_io.hpp"
#include "hyperkey/scheme.hpp"

namespace hyperkey {

struct ReportOptions {
  int partition_limit = kDefaultEnumLimit;
  int subset_limit = kDefaultEnumLimit;
  std::vector<Rational> rho_grid;  // extra grid points on top of the default
  std::size_t tree_cap = kDefaultTreeCap;
  int jobs = 1;
};

namespace detail {

inline Json partition_to_json(const Partition& p) {
  Json j = Json::array();
  for (VertexSet b : p.blocks) j.push_back(vs_vertices(b));
  return j;
}

inline Json set_map_to_json(const std::map<VertexSet, Rational>& f) {
  Json j = Json::array();
  for (const auto& [set, v] : f) {
    Json entry;
    entry["set"] = vs_vertices(set);
    entry["value"] = rational_to_json(v);
    j.push_back(entry);
  }
  return j;
}

}  // namespace detail

inline Json bound_report_to_json(const BoundReport& r) {
  Json j;
  j["kind"] = to_string(r.kind);
  j["slope"] = r.vacuous ? Json("vacuous") : rational_to_json(r.slope);
  if (r.alpha_value) j["alpha"] = rational_to_json(*r.alpha_value);
  if (r.partition) j["partition"] = detail::partition_to_json(*r.partition);
  if (r.tau) j["tau"] = rational_to_json(*r.tau);
  if (r.tau_unbounded) j["tau"] = "unbounded";
  if (r.packing) {
    Json u = Json::array();
    for (const Rational& v : *r.packing) u.push_back(rational_to_json(v));
    j["packing"] = u;
  }
  if (r.beta) j["beta"] = rational_to_json(*r.beta);
  if (r.gamma) j["gamma"] = rational_to_json(*r.gamma);
  if (r.params) {
    j["rho"] = rational_to_json(r.params->rho);
    j["lambda"] = detail::set_map_to_json(r.params->lambda);
    j["pi"] = detail::set_map_to_json(r.params->pi);
  }
  return j;
}

inline Json tree_packing_to_json(const TreePacking& packing) {
  Json j;
  j["value"] = rational_to_json(packing.value);
  Json trees = Json::array();
  for (std::size_t t = 0; t < packing.trees.size(); ++t) {
    if (t < packing.eta.size() && packing.eta[t].is_zero()) continue;
    Json jt;
    Json pairs = Json::array();
    for (int p : packing.trees[t]) pairs.push_back(vs_vertices(packing.pairs[p]));
    jt["pairs"] = pairs;
    jt["eta"] = rational_to_json(packing.eta[t]);
    trees.push_back(jt);
  }
  j["trees"] = trees;
  return j;
}

// Full analysis of one source: the three bounds, the capacity profile, tree
// packing and its protocol for PINs, verdicts for any supplied schemes, and
// the gap between the best upper slope and the best verified scheme slope.
inline Json report_bundle(const Hypergraph& hg, const ReportOptions& options,
                          const std::vector<LinearScheme>& schemes = {}) {
  Json j;
  j["source"] = hypergraph_to_json(hg);
  j["pin"] = hg.is_pin();
  j["h_total"] = rational_to_json(hg.total_entropy());

  BoundReport ep, vp, lam;
  if (options.jobs > 1) {
    auto fep = std::async(std::launch::async, [&] {
      return ep_bound_tightest(hg, options.partition_limit);
    });
    auto fvp = std::async(std::launch::async, [&] { return vp_bound(hg); });
    auto flam = std::async(std::launch::async, [&] {
      return lamination_bound_search(hg, options.rho_grid, {},
                                     options.subset_limit);
    });
    ep = fep.get();
    vp = fvp.get();
    lam = flam.get();
  } else {
    ep = ep_bound_tightest(hg, options.partition_limit);
    vp = vp_bound(hg);
    lam = lamination_bound_search(hg, options.rho_grid, {}, options.subset_limit);
  }
  j["bounds"]["ep"] = bound_report_to_json(ep);
  j["bounds"]["vp"] = bound_report_to_json(vp);
  j["bounds"]["lamination"] = bound_report_to_json(lam);

  OmniscienceResult omni = rco(hg, options.subset_limit);
  CapacityProfile profile =
      combine_envelope(hg, omni, ep, vp, lam, options.subset_limit);
  Json jc;
  jc["r_co"] = rational_to_json(profile.r_co);
  Json rates = Json::array();
  for (const Rational& r : profile.rates) rates.push_back(rational_to_json(r));
  jc["rates"] = rates;
  jc["cs_infinity"] = rational_to_json(profile.cs_inf);
  jc["best_slope"] = rational_to_json(profile.best_slope);
  jc["best_bound"] = to_string(profile.best_kind);
  jc["exact"] = profile.exact;
  if (profile.r_s) jc["r_s"] = rational_to_json(*profile.r_s);
  if (profile.best_slope.sign() > 0)
    jc["envelope_knee"] = rational_to_json(profile.cs_inf / profile.best_slope);
  j["capacity"] = jc;

  std::vector<std::pair<std::string, SchemeVerdict>> verdicts;
  if (hg.is_pin()) {
    TreePacking packing = tree_packing_number(hg, options.tree_cap);
    j["tree_packing"] = tree_packing_to_json(packing);
    // the concrete protocol needs integer weights to allocate bits
    if (packing.value.sign() > 0 && hg.all_integer_weights()) {
      LinearScheme protocol = tree_protocol(hg, packing);
      verdicts.emplace_back("tree_protocol", scheme_rates(protocol));
    }
  }
  for (std::size_t i = 0; i < schemes.size(); ++i)
    verdicts.emplace_back("scheme_" + std::to_string(i), scheme_rates(schemes[i]));

  if (!verdicts.empty()) {
    Json js = Json::array();
    for (const auto& [name, verdict] : verdicts) {
      Json entry = verdict_to_json(verdict);
      entry["name"] = name;
      js.push_back(entry);
    }
    j["schemes"] = js;
  }

  // best verified achievable slope vs the proven upper slope
  std::optional<Rational> achieved;
  for (const auto& [name, verdict] : verdicts) {
    if (!verdict.verified() || verdict.discussion_bits == 0 ||
        verdict.key_bits == 0)
      continue;
    Rational slope = verdict.key_rate / verdict.discussion_rate;
    if (!achieved || slope > *achieved) achieved = slope;
  }
  Json gap;
  gap["upper_slope"] = rational_to_json(profile.best_slope);
  if (achieved) {
    gap["achieved_slope"] = rational_to_json(*achieved);
    gap["tight"] = *achieved == profile.best_slope;
  } else {
    gap["achieved_slope"] = nullptr;
    gap["tight"] = false;
  }
  j["gap"] = gap;
  return j;
}

inline Json profile_to_json(const CapacityProfile& profile) {
  Json j;
  j["h_total"] = rational_to_json(profile.h_total);
  j["r_co"] = rational_to_json(profile.r_co);
  j["cs_infinity"] = rational_to_json(profile.cs_inf);
  j["best_slope"] = rational_to_json(profile.best_slope);
  j["best_bound"] = to_string(profile.best_kind);
  j["exact"] = profile.exact;
  if (profile.r_s) j["r_s"] = rational_to_json(*profile.r_s);
  return j;
}

}  // namespace hyperkey
