#pragma once
#include <json.hpp>
#include <optional>
#include <string>

#include "koszul/modcomod.hpp"
#include "koszul/nerve.hpp"

namespace koszul {

using json = nlohmann::json;

inline constexpr int kSchema = 1;

struct Document {
  std::string kind;
  std::optional<Field> field;
  json body;
};

// schema check only; typed readers below resolve labels
Document read_document(const std::string& text);
Document load_document(const std::string& path);

// flag beats document beats fallback
Field document_field(const Document& doc, std::optional<Field> flag, Field fallback);

DgCategory to_dgcat(const Document& doc, Field f);
PointedCoalgebra to_coalgebra(const Document& doc, Field f);
FiniteSimplicialSet to_sset(const Document& doc);
Comodule to_comodule(const Document& doc, Field f, const PointedCoalgebra& C);
Module to_module(const Document& doc, Field f, const DgCategory& D);
MCElement to_mc(const Document& doc, Field f, const PointedCoalgebra& C, const DgCategory& D);
CoalgebraMorphism to_morphism(const Document& doc, Field f, const PointedCoalgebra& C, const PointedCoalgebra& D);

json serialize(const DgCategory& D);
json serialize(const PointedCoalgebra& C);
json serialize(const FiniteSimplicialSet& K);
json serialize(const Comodule& M, const PointedCoalgebra& C);
json serialize(const Module& M, const DgCategory& D);
json serialize(const MCElement& x, const PointedCoalgebra& C, const DgCategory& D);
json serialize(const CoalgebraMorphism& m, const PointedCoalgebra& C, const PointedCoalgebra& D);

json vec_json(const std::vector<std::string>& labels, const Vec& v);
json report_json(const Report& r);
// sorted keys, two-space indent, trailing newline
std::string canonical(const json& j);

}  // namespace koszul
