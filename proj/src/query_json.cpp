#include "qhorn/query_json.hpp"

#include <fstream>
#include <sstream>

namespace qhorn {

namespace {

VarId var_from_json(const json& v, int n) {
  if (!v.is_number_integer()) throw Error("variable numbers must be integers");
  const int x = v.get<int>();
  if (x < 1 || x > n) throw Error("variable x" + std::to_string(x) + " outside 1.." + std::to_string(n));
  return x - 1;
}

VarSet vars_from_json(const json& arr, int n) {
  if (!arr.is_array()) throw Error("expected an array of variable numbers");
  VarSet s;
  for (const auto& v : arr) s.insert(var_from_json(v, n));
  return s;
}

json vars_to_json(VarSet s) {
  json arr = json::array();
  for (VarId v : s.members()) arr.push_back(v + 1);
  return arr;
}

}  // namespace

QueryClass parse_query_class(const std::string& name) {
  if (name == "qhorn1" || name == "qhorn-1") return QueryClass::Qhorn1;
  if (name == "rp" || name == "role-preserving") return QueryClass::RolePreserving;
  if (name == "any" || name.empty()) return QueryClass::Any;
  throw Error("unknown query class '" + name + "'");
}

QhornQuery query_from_json(const json& j, QueryClass required) {
  if (!j.is_object()) throw Error("query JSON must be an object");
  if (!j.contains("n") || !j["n"].is_number_integer()) throw Error("query JSON requires integer field 'n'");
  QhornQuery q;
  q.n = j["n"].get<int>();
  check_arity(q.n);

  for (const auto& u : j.value("universals", json::array())) {
    if (!u.is_object() || !u.contains("head")) throw Error("universal expressions need a 'head'");
    q.universals.push_back({vars_from_json(u.value("body", json::array()), q.n), var_from_json(u["head"], q.n)});
  }
  for (const auto& e : j.value("existentials", json::array())) {
    VarSet vars;
    if (e.is_array()) {
      vars = vars_from_json(e, q.n);
    } else if (e.is_object()) {
      vars = vars_from_json(e.value("body", json::array()), q.n);
      if (e.contains("head")) vars.insert(var_from_json(e["head"], q.n));
    } else {
      throw Error("existential expressions must be arrays or {body, head} objects");
    }
    q.existentials.push_back({vars});
  }
  if (j.contains("propositions")) q.propositions = j["propositions"].get<std::vector<std::string>>();
  q.validate();

  QueryClass asserted = parse_query_class(j.value("class", std::string{}));
  for (QueryClass c : {asserted, required}) {
    if (c == QueryClass::Qhorn1 && !is_qhorn1(q)) throw Error("query is not in qhorn-1");
    if (c == QueryClass::RolePreserving && !is_role_preserving(q)) throw Error("query is not role-preserving");
  }
  return q;
}

json query_to_json(const QhornQuery& q) {
  json j;
  j["n"] = q.n;
  j["universals"] = json::array();
  for (const auto& u : q.universals) j["universals"].push_back({{"body", vars_to_json(u.body)}, {"head", u.head + 1}});
  j["existentials"] = json::array();
  for (const auto& e : q.existentials) j["existentials"].push_back(vars_to_json(e.vars));
  if (!q.propositions.empty()) j["propositions"] = q.propositions;
  return j;
}

QhornQuery load_query_file(const std::string& path, QueryClass required) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open query file '" + path + "'");
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw Error("invalid query JSON in '" + path + "': " + e.what());
  }
  return query_from_json(j, required);
}

json question_to_json(const QuestionObject& obj) { return {{"tuples", obj.bitstrings()}}; }

QuestionObject question_from_json(const json& j) {
  const json& arr = j.is_object() ? j.at("tuples") : j;
  if (!arr.is_array() || arr.empty()) throw Error("question JSON needs a non-empty 'tuples' array");
  std::vector<Tuple> tuples;
  for (const auto& s : arr) tuples.push_back(parse_tuple(s.get<std::string>()));
  const int n = tuples.front().n;
  return QuestionObject(n, std::move(tuples));
}

json render_tuple(const Tuple& t, const std::vector<std::string>& vocabulary) {
  json row = json::object();
  for (int i = 0; i < t.n; ++i) {
    const std::string key = static_cast<int>(vocabulary.size()) == t.n ? vocabulary[i] : "x" + std::to_string(i + 1);
    row[key] = t.is_true(i);
  }
  return row;
}

}  // namespace qhorn
