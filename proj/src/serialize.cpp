#include "freereg/serialize.hpp"

#include "freereg/errors.hpp"

namespace freereg {

namespace {

using nlohmann::json;

Word word_from_json(const json& j) {
  if (!j.is_array()) throw InvalidArgumentError("word must be an array of generator indices");
  Word w;
  w.reserve(j.size());
  for (const auto& v : j) {
    if (!v.is_number_integer()) throw InvalidArgumentError("word entries must be integers");
    w.push_back(v.get<int>());
  }
  return w;
}

Scalar scalar_from_json(const json& term) {
  if (!term.contains("re") || !term.contains("im"))
    throw InvalidArgumentError("term needs 're' and 'im' rational strings");
  return Scalar(Scalar::parse_rational(term.at("re").get<std::string>()),
                Scalar::parse_rational(term.at("im").get<std::string>()));
}

int var_count_from_json(const json& j) {
  if (!j.contains("n") || !j.at("n").is_number_integer())
    throw InvalidArgumentError("serialized polynomial needs integer field 'n'");
  return j.at("n").get<int>();
}

}  // namespace

json poly_to_json(const NcPoly& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) {
    terms.push_back({{"word", w}, {"re", c.re_string()}, {"im", c.im_string()}});
  }
  return {{"n", p.var_count()}, {"terms", std::move(terms)}};
}

NcPoly poly_from_json(const json& j) {
  NcPoly p(var_count_from_json(j));
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw InvalidArgumentError("serialized polynomial needs array field 'terms'");
  for (const auto& term : j.at("terms"))
    p.add_term(word_from_json(term.at("word")), scalar_from_json(term));
  return p;
}

json tensor_to_json(const TensorPoly& t) {
  json terms = json::array();
  for (const auto& [key, c] : t.terms()) {
    terms.push_back({{"word_left", key.first},
                     {"word_right", key.second},
                     {"re", c.re_string()},
                     {"im", c.im_string()}});
  }
  return {{"n", t.var_count()}, {"terms", std::move(terms)}};
}

TensorPoly tensor_from_json(const json& j) {
  TensorPoly t(var_count_from_json(j));
  if (!j.contains("terms") || !j.at("terms").is_array())
    throw InvalidArgumentError("serialized tensor needs array field 'terms'");
  for (const auto& term : j.at("terms"))
    t.add_term(word_from_json(term.at("word_left")), word_from_json(term.at("word_right")),
               scalar_from_json(term));
  return t;
}

json cpoly_to_json(const CPoly& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms())
    terms.push_back({{"word", w}, {"re", c.real()}, {"im", c.imag()}});
  return {{"n", p.var_count()}, {"terms", std::move(terms)}};
}

TraceFunctional trace_table_from_json(const json& j) {
  if (!j.contains("table") || !j.at("table").is_array())
    throw InvalidArgumentError("trace table needs array field 'table'");
  TraceFunctional::Table table;
  for (const auto& entry : j.at("table"))
    table[word_from_json(entry.at("word"))] = scalar_from_json(entry);
  return TraceFunctional::user_table(std::move(table));
}

}  // namespace freereg
