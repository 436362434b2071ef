#pragma once

#include <cstdint>
#include <string>

#include <json.hpp>

#include "pa/pathway.hpp"

namespace pa {

// {"basis": [display...], "steps": [{"left": ref, "right": ref,
//  "product": display}...]} with the signed reference convention: basis slot
// k is -(k+1), step s is +s (1-based).
template <System S>
nlohmann::json pathway_to_json(const S& sys,
                               const Pathway<typename S::object_type>& p) {
  nlohmann::json j;
  j["basis"] = nlohmann::json::array();
  for (const auto& b : p.basis_objects) j["basis"].push_back(sys.display(b));
  j["steps"] = nlohmann::json::array();
  for (const auto& st : p.steps) {
    nlohmann::json s;
    s["left"] = st.left;
    s["right"] = st.right;
    s["product"] = sys.display(st.product);
    j["steps"].push_back(std::move(s));
  }
  return j;
}

template <System S>
  requires HasParse<S>
Pathway<typename S::object_type> pathway_from_json(const S& sys,
                                                   const nlohmann::json& j) {
  Pathway<typename S::object_type> p;
  try {
    for (const auto& b : j.at("basis"))
      p.basis_objects.push_back(sys.parse(b.get<std::string>()));
    for (const auto& s : j.at("steps")) {
      Step<typename S::object_type> st;
      st.left = s.at("left").get<std::int64_t>();
      st.right = s.at("right").get<std::int64_t>();
      st.product = sys.parse(s.at("product").get<std::string>());
      p.steps.push_back(std::move(st));
    }
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("bad pathway JSON: ") + e.what(), 1);
  }
  return p;
}

template <System S>
nlohmann::json index_result_to_json(
    const S& sys, const IndexResult<typename S::object_type>& res) {
  nlohmann::json j;
  j["index"] = res.index;
  j["lower_bound"] = res.lower_bound;
  j["upper_bound"] = res.upper_bound;
  j["exact"] = res.exact;
  j["witness"] = pathway_to_json(sys, res.witness);
  return j;
}

}  // namespace pa
