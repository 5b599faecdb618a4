#include "tenrank/io.hpp"

#include <fstream>

#include "tenrank/digest.hpp"
#include "tenrank/scalar_io.hpp"

namespace tenrank {
namespace {

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::ParseError, what); }

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) bad(std::string("missing field '") + key + "'");
  return j.at(key);
}

Shape shape_from(const Json& j) {
  if (!j.is_array() || j.empty()) bad("shape must be a nonempty array");
  std::vector<int> dims;
  for (const auto& d : j) {
    if (!d.is_number_integer() || d.get<int>() < 1) bad("shape entries must be positive integers");
    dims.push_back(d.get<int>());
  }
  return Shape(dims);
}

template <class S>
S scalar_from(const Json& j) {
  if (j.is_number_integer()) return S(Cyclotomic(j.get<std::int64_t>()));
  if (!j.is_string()) bad("scalar must be a string literal");
  return parse_scalar<S>(j.get<std::string>());
}

template <class S>
Json tensor_json(const Tensor<S>& t) {
  Json out;
  out["shape"] = t.shape().dims();
  out["scalar"] = scalar_kind<S>;
  Json entries = Json::array();
  for (const auto& [k, v] : t.entries()) entries.push_back({{"idx", t.shape().multi(k)}, {"val", format_scalar(v)}});
  out["entries"] = std::move(entries);
  return out;
}

template <class S>
Tensor<S> tensor_parse(const Shape& shape, const Json& entries) {
  if (!entries.is_array()) bad("entries must be an array");
  std::vector<std::pair<std::vector<int>, S>> list;
  for (const auto& e : entries) list.emplace_back(field(e, "idx").get<std::vector<int>>(), scalar_from<S>(field(e, "val")));
  return Tensor<S>::from_entries(shape, list);
}

template <class S>
Json decomposition_json(const Decomposition<S>& d) {
  Json out;
  out["shape"] = d.shape.dims();
  out["scalar"] = scalar_kind<S>;
  if (!d.note.empty()) out["note"] = d.note;
  Json terms = Json::array();
  for (const auto& term : d.terms) {
    Json vectors = Json::array();
    for (const auto& v : term.vectors) {
      Json vec = Json::array();
      for (const auto& x : v) vec.push_back(format_scalar(x));
      vectors.push_back(std::move(vec));
    }
    terms.push_back({{"scale", format_scalar(term.scale)}, {"vectors", std::move(vectors)}});
  }
  out["terms"] = std::move(terms);
  return out;
}

template <class S>
Json map_json(const LocalMap<S>& m) {
  Json out;
  out["scalar"] = scalar_kind<S>;
  Json mats = Json::array();
  for (const auto& a : m) {
    Json rows = Json::array();
    for (int r = 0; r < a.rows(); ++r) {
      Json row = Json::array();
      for (int c = 0; c < a.cols(); ++c) row.push_back(format_scalar(a(r, c)));
      rows.push_back(std::move(row));
    }
    mats.push_back({{"rows", a.rows()}, {"cols", a.cols()}, {"entries", std::move(rows)}});
  }
  out["matrices"] = std::move(mats);
  return out;
}

template <class S>
void expect_scalar_field(const Json& j) {
  if (j.contains("scalar") && j.at("scalar") != scalar_kind<S>) bad("expected scalar kind '" + std::string(scalar_kind<S>) + "'");
}

Json strings(const std::vector<std::string>& v) { return Json(v); }

}  // namespace

Json to_json(const CycTensor& t) { return tensor_json(t); }
Json to_json(const EpsTensor& t) { return tensor_json(t); }
Json to_json(const AnyTensor& t) {
  return std::visit([](const auto& x) { return tensor_json(x); }, t);
}

AnyTensor tensor_from_json(const Json& j) {
  try {
    Shape shape = shape_from(field(j, "shape"));
    std::string kind = j.value("scalar", std::string("cyc"));
    if (kind == "cyc") return tensor_parse<Cyclotomic>(shape, field(j, "entries"));
    if (kind == "eps") return tensor_parse<EpsLaurent>(shape, field(j, "entries"));
    bad("unknown scalar kind '" + kind + "'");
  } catch (const Json::exception& e) {
    bad(std::string("tensor JSON: ") + e.what());
  }
}

Json to_json(const CycDecomposition& d) { return decomposition_json(d); }
Json to_json(const EpsDecomposition& d) { return decomposition_json(d); }

template <class S>
Decomposition<S> decomposition_from_json(const Json& j) {
  try {
    expect_scalar_field<S>(j);
    Decomposition<S> d;
    d.shape = shape_from(field(j, "shape"));
    d.note = j.value("note", std::string());
    for (const auto& t : field(j, "terms")) {
      RankOneTerm<S> term{scalar_from<S>(field(t, "scale")), {}};
      for (const auto& v : field(t, "vectors")) {
        std::vector<S> vec;
        for (const auto& x : v) vec.push_back(scalar_from<S>(x));
        term.vectors.push_back(std::move(vec));
      }
      d.terms.push_back(std::move(term));
    }
    check_shape(d);
    return d;
  } catch (const Json::exception& e) {
    bad(std::string("decomposition JSON: ") + e.what());
  }
}
template CycDecomposition decomposition_from_json<Cyclotomic>(const Json&);
template EpsDecomposition decomposition_from_json<EpsLaurent>(const Json&);

Json to_json(const CycLocalMap& m) { return map_json(m); }
Json to_json(const EpsLocalMap& m) { return map_json(m); }

template <class S>
LocalMap<S> local_map_from_json(const Json& j) {
  try {
    expect_scalar_field<S>(j);
    LocalMap<S> out;
    for (const auto& mj : field(j, "matrices")) {
      const int rows = field(mj, "rows").get<int>(), cols = field(mj, "cols").get<int>();
      Matrix<S> a(rows, cols);
      const Json& entries = field(mj, "entries");
      if (!entries.is_array() || static_cast<int>(entries.size()) != rows) bad("matrix row count mismatch");
      for (int r = 0; r < rows; ++r) {
        const Json& row = entries[static_cast<std::size_t>(r)];
        if (!row.is_array() || static_cast<int>(row.size()) != cols) bad("matrix column count mismatch");
        for (int c = 0; c < cols; ++c) a(r, c) = scalar_from<S>(row[static_cast<std::size_t>(c)]);
      }
      out.push_back(std::move(a));
    }
    return out;
  } catch (const Json::exception& e) {
    bad(std::string("local map JSON: ") + e.what());
  }
}
template CycLocalMap local_map_from_json<Cyclotomic>(const Json&);
template EpsLocalMap local_map_from_json<EpsLaurent>(const Json&);

Json to_json(const CycVector& v) {
  Json out = Json::array();
  for (const auto& x : v) out.push_back(format_scalar(x));
  return out;
}

Json to_json(const PersistenceCertificate& c) {
  Json chain = Json::array();
  for (const auto& e : c.witness_chain) chain.push_back(to_json(e));
  Json out{{"method", to_string(c.method)}, {"subject", digest_hex(c.subject)}, {"conclusive", c.conclusive}, {"witness_chain", std::move(chain)}};
  if (c.method == PersistenceMethod::SCREENED) out["sampled_covectors"] = c.sampled_covectors;
  out["diagnostics"] = strings(c.diagnostics);
  return out;
}

PersistenceCertificate persistence_certificate_from_json(const Json& j) {
  try {
    PersistenceCertificate c;
    std::string method = field(j, "method").get<std::string>();
    if (method == "PYRAMID") c.method = PersistenceMethod::PYRAMID;
    else if (method == "EXACT_QUBIT") c.method = PersistenceMethod::EXACT_QUBIT;
    else if (method == "SCREENED") c.method = PersistenceMethod::SCREENED;
    else bad("unknown persistence method '" + method + "'");
    c.subject = std::stoull(field(j, "subject").get<std::string>(), nullptr, 16);
    c.conclusive = j.value("conclusive", c.method != PersistenceMethod::SCREENED);
    c.sampled_covectors = j.value("sampled_covectors", 0);
    for (const auto& e : field(j, "witness_chain")) {
      CycVector v;
      for (const auto& x : e) v.push_back(scalar_from<Cyclotomic>(x));
      c.witness_chain.push_back(std::move(v));
    }
    if (j.contains("diagnostics")) c.diagnostics = j.at("diagnostics").get<std::vector<std::string>>();
    return c;
  } catch (const Json::exception& e) {
    bad(std::string("certificate JSON: ") + e.what());
  } catch (const std::invalid_argument&) {
    bad("certificate subject is not a hex digest");
  }
}

Json to_json(const RankCertificate& c) {
  Json out{{"subject", digest_hex(c.subject)}, {"lower", c.lower}};
  out["upper"] = c.upper ? Json(*c.upper) : Json(nullptr);
  out["exact"] = c.exact();
  if (!c.upper_ref.empty()) out["upper_ref"] = c.upper_ref;
  out["trace"] = strings(c.trace);
  return out;
}

Json to_json(const QubitDecision& d) {
  Json out{{"persistent", d.persistent}};
  if (d.certificate) out["certificate"] = to_json(*d.certificate);
  if (!d.persistent) out["reason"] = d.structural ? "structural" : "no witness in candidate set";
  Json valid = Json::array();
  for (const auto& e : d.valid_witnesses) valid.push_back(to_json(e));
  out["valid_witnesses"] = std::move(valid);
  out["trace"] = strings(d.trace);
  return out;
}

Json to_json(const ScreenResult& r) {
  Json out{{"outcome", to_string(r.outcome)}, {"conclusive", false}, {"sampled_covectors", r.sampled_covectors}};
  if (r.certificate) out["certificate"] = to_json(*r.certificate);
  out["trace"] = strings(r.trace);
  return out;
}

Json to_json(const DegenerationCertificate& c) {
  return Json{{"source", digest_hex(c.source)},
              {"target", digest_hex(c.target)},
              {"verified", c.verified},
              {"approximation_degree", c.approximation_degree},
              {"error_degree", c.error_degree},
              {"normalization_shift", c.normalization_shift},
              {"scalar", format_scalar(c.scalar)},
              {"trace", strings(c.trace)}};
}

Json to_json(const BorderRankCertificate& c) {
  return Json{{"subject", digest_hex(c.subject)}, {"lower", c.lower}, {"upper", c.upper}, {"exact", c.exact()}, {"order", c.order},
              {"scalar", format_scalar(c.scalar)}, {"terms", to_json(c.terms)}, {"trace", strings(c.trace)}};
}

Json to_json(const RateBound& b) {
  Json out{{"best_pair", {b.best_pair.first, b.best_pair.second}}};
  out["best_cut"] = b.best_cut ? Json(b.best_cut->members()) : Json(nullptr);
  out["value_is_at_least_one"] = b.value_is_at_least_one;
  out["value_exceeds_one"] = b.value_exceeds_one;
  out["display_value"] = b.display_value;
  out["trace"] = strings(b.trace);
  return out;
}

Json to_json(const RateCertificate& c) {
  Json out{{"result", c.rate_one ? "RateOne" : "Inconclusive"}};
  if (!c.failing.empty()) out["failing"] = c.failing;
  out["degeneration"] = c.degeneration ? to_json(*c.degeneration) : Json(nullptr);
  out["lower_bound"] = to_json(c.bound);
  out["trace"] = strings(c.trace);
  return out;
}

Json to_json(const SchmidtProfile& p) {
  Json out = Json::array();
  for (const auto& [cut, r] : p) out.push_back({{"cut", cut.members()}, {"rank", r}});
  return out;
}

Json read_json_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const Json::exception& e) {
    bad(path.string() + ": " + e.what());
  }
}

void write_json_file(const std::filesystem::path& path, const Json& j) {
  std::ofstream out(path);
  if (!out) bad("cannot write " + path.string());
  out << j.dump(2) << '\n';
}

}  // namespace tenrank
