#pragma once

#include <json.hpp>

#include "dcurv/curvature.hpp"
#include "dcurv/ops.hpp"
#include "dcurv/search.hpp"
#include "dcurv/spectral.hpp"

namespace dcurv {

// Insertion-ordered so that identical inputs give byte-identical output.
using Json = nlohmann::ordered_json;

inline Json json_of(const Rational& r) { return to_string(r); }

inline Json json_of(const RatVector& v) {
  Json a = Json::array();
  for (const auto& x : v) a.push_back(to_string(x));
  return a;
}

inline const char* to_cstring(CurvatureKind k) {
  switch (k) {
    case CurvatureKind::Unique:
      return "unique";
    case CurvatureKind::AffineFamily:
      return "affine_family";
    case CurvatureKind::NoSolution:
      return "no_solution";
  }
  return "?";
}

inline const char* to_cstring(WitnessStatus s) {
  switch (s) {
    case WitnessStatus::Found:
      return "found";
    case WitnessStatus::Absent:
      return "absent";
    case WitnessStatus::Unknown:
      return "unknown";
  }
  return "?";
}

inline const char* to_cstring(BoundCheck c) {
  switch (c) {
    case BoundCheck::Holds:
      return "holds";
    case BoundCheck::Indeterminate:
      return "indeterminate";
    case BoundCheck::Fails:
      return "fails";
  }
  return "?";
}

inline Json json_of(const BonnetMyersReport& bm) {
  return Json{{"bound", json_of(bm.bound)},
              {"diam", bm.diam},
              {"K", json_of(bm.k_min)},
              {"sharp", bm.sharp}};
}

inline Json curvature_report_json(const Graph& g, const CurvatureReport& r) {
  Json j;
  j["n"] = r.n;
  j["kind"] = to_cstring(r.kind);
  if (r.solvable()) {
    j["w"] = json_of(r.w);
    j["total"] = json_of(r.total);
    j["nullity"] = r.nullity();
    if (!r.null_basis.empty()) {
      Json basis = Json::array();
      for (const auto& v : r.null_basis) basis.push_back(json_of(v));
      j["null_basis"] = basis;
    }
    j["witness_status"] = to_cstring(r.witness_status);
    if (r.nonneg_witness) {
      j["nonneg_witness"] = json_of(*r.nonneg_witness);
      j["bonnet_myers"] = json_of(bonnet_myers(g, *r.nonneg_witness));
    }
    if (r.constant_value) j["constant_value"] = json_of(*r.constant_value);
  } else {
    j["certificate"] = json_of(r.certificate);
    j["nullity"] = r.nullity();
  }
  return j;
}

inline Json json_of(const TransportCoefficients& c) {
  return Json{{"alpha", json_of(c.alpha)}, {"s", json_of(c.s)}, {"scale", json_of(c.scale)}};
}

inline Json json_of(const SearchRecord& rec) {
  Json j;
  j["index"] = rec.index;
  j["graph6"] = rec.graph6;
  j["n"] = rec.n;
  j["solvable"] = rec.solvable;
  j["nullity"] = rec.nullity;
  if (rec.certificate) j["certificate"] = json_of(*rec.certificate);
  return j;
}

inline Json json_of(const SpectralReport& s) {
  Json j;
  j["lambda1"] = s.lambda1;
  j["lambda2"] = s.lambda2;
  j["residual"] = s.residual;
  j["eta"] = s.eta;
  j["row_sum_min"] = json_of(s.row_sum_min);
  j["row_sum_max"] = json_of(s.row_sum_max);
  j["row_sum_avg"] = json_of(s.row_sum_avg);
  return j;
}

inline Json json_of(const TreeBoundReport& t) {
  Json j;
  j["n"] = t.n;
  j["leaves"] = t.l;
  j["lambda1"] = t.lambda1;
  j["lhs"] = t.lhs;
  j["applicable"] = t.applicable;
  if (t.applicable) {
    j["rhs_proof"] = t.rhs_proof;
    j["rhs_stated"] = t.rhs_stated;
    j["status_proof"] = to_cstring(t.status_proof);
    j["status_stated"] = to_cstring(t.status_stated);
    j["holds_proof"] = t.holds_proof;
    j["holds_stated"] = t.holds_stated;
  }
  return j;
}

}  // namespace dcurv
