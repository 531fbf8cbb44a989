#pragma once

#include <string>

#include <json.hpp>

#include "nzflow/multigraph.hpp"
#include "nzflow/orientation.hpp"
#include "nzflow/pairing.hpp"

namespace nzflow {

using Json = nlohmann::json;

inline Json to_json(const Pairing& p) {
  Json j;
  j["n"] = p.n;
  Json arr = Json::array();
  for (const auto& pr : p.pairs) arr.push_back({pr[0], pr[1]});
  j["pairs"] = std::move(arr);
  return j;
}

inline Pairing pairing_from_json(const Json& j) {
  Pairing p;
  p.n = j.at("n").get<int>();
  for (const auto& e : j.at("pairs")) p.pairs.push_back({e.at(0).get<int>(), e.at(1).get<int>()});
  p.check();
  return p;
}

inline Json to_json(const MultiGraph& g) {
  Json j;
  j["n"] = g.n;
  Json arr = Json::array();
  for (const auto& e : g.edges) arr.push_back({e.u, e.v, e.mult});
  j["edges"] = std::move(arr);
  return j;
}

inline MultiGraph multigraph_from_json(const Json& j) {
  MultiGraph g;
  g.n = j.at("n").get<int>();
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at(0).get<int>(), e.at(1).get<int>(), e.at(2).get<int>()});
  return g;
}

// Orientations serialize as [out-point, in-point] pairs.
inline Json to_json(const Pairing& p, const Orientation& o) {
  Json arr = Json::array();
  for (int i = 0; i < p.num_pairs(); ++i)
    arr.push_back({out_point_of(p, o, i), in_point_of(p, o, i)});
  Json j;
  j["oriented_pairs"] = std::move(arr);
  return j;
}

inline Orientation orientation_from_json(const Pairing& p, const Json& j) {
  const auto& arr = j.at("oriented_pairs");
  if (arr.size() != p.pairs.size())
    throw std::invalid_argument("orientation_from_json: pair count mismatch");
  Orientation o;
  o.to_second.resize(arr.size());
  for (size_t i = 0; i < arr.size(); ++i) {
    const int out_pt = arr[i].at(0).get<int>();
    const int in_pt = arr[i].at(1).get<int>();
    if (out_pt == p.pairs[i][0] && in_pt == p.pairs[i][1]) {
      o.to_second[i] = 1;
    } else if (out_pt == p.pairs[i][1] && in_pt == p.pairs[i][0]) {
      o.to_second[i] = 0;
    } else {
      throw std::invalid_argument("orientation_from_json: oriented pair does not match pairing");
    }
  }
  return o;
}

}  // namespace nzflow
