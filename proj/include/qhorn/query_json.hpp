#pragma once

#include <string>

#include "json.hpp"

#include "qhorn/query.hpp"

namespace qhorn {

using json = nlohmann::json;

enum class QueryClass { Any, Qhorn1, RolePreserving };

QueryClass parse_query_class(const std::string& name);

/// Reads {"n":6, "universals":[{"body":[1,4],"head":5}], "existentials":[[1,2,3]],
/// "propositions":[...]} with 1-based variable numbers. An existential may
/// also be written as a Horn expression {"body":[...],"head":h}; it is stored
/// as the conjunction of body and head. An optional "class" field ("qhorn1"
/// or "rp") is validated, as is `required` when not Any.
QhornQuery query_from_json(const json& j, QueryClass required = QueryClass::Any);
json query_to_json(const QhornQuery& q);

QhornQuery load_query_file(const std::string& path, QueryClass required = QueryClass::Any);

json question_to_json(const QuestionObject& obj);
QuestionObject question_from_json(const json& j);

/// Vocabulary rendering of one tuple: {"isDark": true, ...}; falls back to
/// x1..xn when no vocabulary is given.
json render_tuple(const Tuple& t, const std::vector<std::string>& vocabulary);

}  // namespace qhorn
