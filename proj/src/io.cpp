#include "clonelab/io.hpp"

#include <fstream>

namespace clonelab::io {

namespace {

json tuple_to_json(const Tuple& t) {
  json a = json::array();
  for (Value v : t) a.push_back(int(v));
  return a;
}

Tuple tuple_from_json(const json& j) {
  Tuple t;
  for (const auto& v : j) t.push_back(static_cast<Value>(v.get<int>()));
  return t;
}

}  // namespace

json to_json(const FiniteFunction& f) {
  return json{{"k", f.k()}, {"n", f.arity()}, {"table", tuple_to_json(f.table())}};
}

FiniteFunction function_from_json(const json& j) {
  return FiniteFunction(j.at("k").get<int>(), j.at("n").get<int>(),
                        tuple_from_json(j.at("table")));
}

json to_json(const FunctionSet& set) {
  json fns = json::array();
  for (const auto& f : set.all()) fns.push_back(to_json(f));
  json j{{"k", set.k()}, {"closed_up_to", nullptr}, {"functions", fns}};
  if (set.closed_up_to()) j["closed_up_to"] = *set.closed_up_to();
  return j;
}

FunctionSet function_set_from_json(const json& j) {
  std::vector<FiniteFunction> fns;
  for (const auto& f : j.at("functions")) fns.push_back(function_from_json(f));
  std::optional<int> closed;
  if (j.contains("closed_up_to") && !j.at("closed_up_to").is_null()) {
    closed = j.at("closed_up_to").get<int>();
  }
  return FunctionSet(j.at("k").get<int>(), std::move(fns), closed);
}

json generators_to_json(const GeneratorSet& gens) {
  json fns = json::array();
  for (const auto& f : gens.functions()) fns.push_back(to_json(f));
  return json{{"k", gens.k()}, {"closed_up_to", nullptr}, {"functions", fns}};
}

GeneratorSet generators_from_json(const json& j) {
  std::vector<FiniteFunction> fns;
  for (const auto& f : j.at("functions")) fns.push_back(function_from_json(f));
  return GeneratorSet(j.at("k").get<int>(), std::move(fns));
}

json to_json(const QSet& h) {
  json rows = json::array();
  for (std::size_t i = 0; i < h.size(); ++i) {
    rows.push_back(tuple_to_json(h.row_tuple(i)));
  }
  return json{{"k", h.k()}, {"m", h.m()}, {"rows", rows}};
}

QSet qset_from_json(const json& j) {
  const int k = j.at("k").get<int>();
  const int m = j.at("m").get<int>();
  std::vector<Tuple> rows;
  for (const auto& r : j.at("rows")) rows.push_back(tuple_from_json(r));
  return QSet::from_tuples(k, m, rows);
}

json to_json(const SubsetFamily& fam) {
  json sets = json::array();
  for (const auto& s : fam.sets()) sets.push_back(s);
  return json{{"m", fam.m()}, {"sets", sets}};
}

SubsetFamily family_from_json(const json& j) {
  std::vector<std::vector<int>> sets;
  for (const auto& s : j.at("sets")) sets.push_back(s.get<std::vector<int>>());
  return SubsetFamily(j.at("m").get<int>(), std::move(sets));
}

json to_json(const TraceSet& traces) {
  json cells = json::array();
  for (std::uint64_t c : traces.cells) {
    cells.push_back(tuple_to_json(decode_tuple(c, traces.arity, traces.k)));
  }
  json rows = json::array();
  for (const auto& t : traces.traces) rows.push_back(tuple_to_json(t));
  return json{{"k", traces.k},
              {"arity", traces.arity},
              {"cells", cells},
              {"traces", rows}};
}

namespace {

json witness_to_json(const DeltaWitness& w, int n, int k) {
  json j{{"tuple", tuple_to_json(w.demand_tuple)},
         {"value", int(w.demand_value)}};
  if (!w.second_tuple.empty()) {
    j["tuple2"] = tuple_to_json(w.second_tuple);
    j["value2"] = int(w.second_value);
  }
  json cells = json::array();
  for (std::uint64_t c : w.cells) cells.push_back(tuple_to_json(decode_tuple(c, n, k)));
  j["cells"] = cells;
  j["trace"] = tuple_to_json(w.trace);
  return j;
}

}  // namespace

json to_json(const DeltaReport& report) {
  // The cells of every witness share the carrier; recover k from tuples.
  int k = 2;
  for (const auto& w : report.witnesses) {
    for (Value v : w.demand_tuple) k = std::max(k, int(v) + 1);
  }
  if (report.counterexample) {
    for (Value v : report.counterexample->demand_tuple) {
      k = std::max(k, int(v) + 1);
    }
  }
  json j{{"condition", to_string(report.kind)},
         {"n", report.n},
         {"holds", report.holds},
         {"vacuous", report.vacuous},
         {"witness_index", nullptr},
         {"witnesses", json::array()},
         {"counterexample", nullptr}};
  if (report.witness_index) j["witness_index"] = *report.witness_index;
  for (const auto& w : report.witnesses) {
    j["witnesses"].push_back(witness_to_json(w, report.n, k));
  }
  if (report.counterexample) {
    j["counterexample"] = witness_to_json(*report.counterexample, report.n, k);
  }
  return j;
}

json to_json(const BinaryPairRelation& rel) {
  json pairs = json::array();
  for (const auto& [a, b] : rel.pairs) {
    pairs.push_back(json::array({tuple_to_json(decode_tuple(a, 2, rel.k)),
                                 tuple_to_json(decode_tuple(b, 2, rel.k))}));
  }
  return json{{"k", rel.k}, {"pairs", pairs}};
}

json to_json(const PostClassId& id) {
  if (id.is_named()) return json{{"class", to_string(id.tag())}};
  json fp = json::array();
  for (const auto& [n, table] : id.fingerprint().functions) {
    fp.push_back(json{{"n", n}, {"table", tuple_to_json(table)}});
  }
  return json{{"class", "Other"}, {"fingerprint", fp}};
}

PostClassId post_class_from_json(const json& j) {
  const auto name = j.at("class").get<std::string>();
  const auto tag = post_tag_from_string(name);
  if (!tag) throw std::invalid_argument("unknown class name " + name);
  if (*tag != PostTag::Other) return PostClassId::named(*tag);
  Fingerprint fp;
  for (const auto& f : j.at("fingerprint")) {
    fp.functions.emplace_back(f.at("n").get<int>(),
                              tuple_from_json(f.at("table")));
  }
  return PostClassId::other(std::move(fp));
}

json to_json(const PiFamily& fam) {
  json entries = json::array();
  for (const auto& e : fam.entries) {
    entries.push_back(json{{"pair", json::array({int(e.lo), int(e.hi)})},
                           {"class", to_json(e.cls)},
                           {"swapped_labeling", e.swapped_labeling}});
  }
  return json{{"k", fam.k}, {"bound", fam.bound}, {"entries", entries}};
}

json to_json(const ArityVerdict& verdict) {
  if (verdict.finite) return json{{"finite", true}, {"r", verdict.value}};
  return json{{"finite", false}, {"at_least", verdict.value}};
}

json to_json(const NTupleRelation& rel) {
  json pairs = json::array();
  for (const auto& [a, b] : rel.pairs) {
    pairs.push_back(json::array({tuple_to_json(decode_tuple(a, rel.n, rel.k)),
                                 tuple_to_json(decode_tuple(b, rel.n, rel.k))}));
  }
  return json{{"k", rel.k}, {"n", rel.n}, {"pairs", pairs}};
}

json to_json(const Characteristic& chi) {
  json r_block = json::object();
  json d_block = json::object();
  for (const auto& [n, rel] : chi.linkage) r_block[std::to_string(n)] = to_json(rel);
  for (const auto& [n, rel] : chi.anchored) d_block[std::to_string(n)] = to_json(rel);
  return json{{"k", chi.k},         {"bound", chi.bound},
              {"r", to_json(chi.r)}, {"R", r_block},
              {"D", d_block},       {"pi", to_json(chi.pi)}};
}

json to_json(const VerificationReport& report) {
  json failures = json::array();
  for (const auto& f : report.failures) {
    json jf{{"detail", f.detail},
            {"h", nullptr},
            {"side", f.side},
            {"internal_bug_suspected", f.internal_bug_suspected}};
    if (f.h) jf["h"] = to_json(*f.h);
    failures.push_back(jf);
  }
  return json{{"statement", report.statement},
              {"clone", report.clone_name},
              {"status", to_string(report.status)},
              {"instances", report.instances},
              {"mode", report.exhaustive ? "exhaustive" : "sampled"},
              {"seed", report.seed},
              {"failures", failures},
              {"note", report.note}};
}

json to_json(const FunctionShape& shape) {
  json j{{"is_projection", shape.is_projection},
         {"projection_index", nullptr},
         {"is_conservative", shape.is_conservative},
         {"is_idempotent", shape.is_idempotent},
         {"is_d_function", shape.is_d_function},
         {"is_l_function", shape.is_l_function}};
  if (shape.is_projection) j["projection_index"] = shape.projection_index;
  return j;
}

void write_json_file(const std::filesystem::path& path, const json& j) {
  std::ofstream out(path);
  if (!out) {
    throw std::runtime_error("cannot open " + path.string() + " for writing");
  }
  out << j.dump(2) << "\n";
}

json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::runtime_error("cannot open " + path.string());
  }
  return json::parse(in);
}

}  // namespace clonelab::io
