#pragma once

#include <optional>
#include <string>

#include "json.hpp"

#include "cellkit/cartan.hpp"
#include "cellkit/chartable.hpp"
#include "cellkit/coxgroup.hpp"
#include "cellkit/leading.hpp"
#include "cellkit/relcells.hpp"
#include "cellkit/ring.hpp"

namespace cellkit {

using Json = nlohmann::ordered_json;

// Scalars: a rational string, or {conductor, coords: [rational strings]}.
Json cyc_to_json(const CycScalar& x);
CycScalar cyc_from_json(const Json& j);
// Laurent polynomials: [[exponent, coords, conductor], ...], ascending exponents.
Json laurent_to_json(const LaurentPolynomial& f);
Json laurent_to_json(const IntLaurent& f);
LaurentPolynomial laurent_from_json(const Json& j);
IntLaurent int_laurent_from_json(const Json& j);

// Square array of scalars, bare or as {"cartan": [...]}.
CartanMatrix cartan_from_json(const Json& j);
CartanMatrix cartan_from_file(const std::string& path);

Json word_to_json(const Word& w);

// {group, weights, cells: [{elements: [words], I, edges, zeroWeightMaps}]}; W-graph
// fields only when the result carries them and with_wgraphs is set.
Json cells_to_json(const ElementTable& T, const WeightFunction& L, const CellResult& r, bool with_wgraphs);
CellResult cells_from_json(const ElementTable& T, const WeightFunction& L, const Json& j);

// {group, weights, classes: [{rep, size}], irreducibles: [{label, dim, values}]}
Json hecke_to_json(const ElementTable& T, const HeckeCharTable& H);
// Rows and columns are matched to ct by specialization and class representatives.
HeckeCharTable hecke_from_json(const ElementTable& T, const OrdinaryCharTable& ct, const Json& j);

// Cell partitions cached as <dir>/<key>.json with key from (cartanname, weights).
std::string cache_key(const CoxeterGroup& W, const WeightFunction& L);
std::optional<CellResult> cache_load(const std::string& dir, const ElementTable& T, const WeightFunction& L);
void cache_store(const std::string& dir, const ElementTable& T, const WeightFunction& L, const CellResult& r);

}  // namespace cellkit
