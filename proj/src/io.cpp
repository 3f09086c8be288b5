#include "skewlin/io.hpp"

#include "skewlin/errors.hpp"

namespace skewlin {

namespace {

void require_keys(const Json& j, std::initializer_list<const char*> required,
                  std::initializer_list<const char*> optional,
                  const std::string& where) {
  for (const char* key : required)
    if (!j.contains(key))
      throw ParseError(where + ": missing key '" + key + "'");
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* key : required)
      if (it.key() == key) known = true;
    for (const char* key : optional)
      if (it.key() == key) known = true;
    if (!known) throw ParseError(where + ": unknown key '" + it.key() + "'");
  }
}

std::vector<Matrix> gens_from_json(const FieldPtr& f, const Json& j, std::size_t n,
                                   const std::string& where) {
  if (!j.is_array()) throw ParseError(where + " must be an array of matrices");
  std::vector<Matrix> out;
  for (const auto& mj : j) out.push_back(matrix_from_json(f, mj, n, n));
  return out;
}

Json gens_to_json(const std::vector<Matrix>& gens) {
  Json out = Json::array();
  for (const auto& g : gens) out.push_back(matrix_to_json(g));
  return out;
}

Json k_element_to_json(const FieldPtr& f, const Vec& coords) {
  Json out = Json::array();
  for (const auto& s : coords) out.push_back(scalar_to_json(f, s));
  return out;
}

Vec k_element_from_json(const FieldPtr& f, const Json& j, std::size_t d) {
  if (!j.is_array() || j.size() != d)
    throw ParseError("K element must be an array of dim K scalars");
  Vec out;
  for (const auto& sj : j) out.push_back(scalar_from_json(f, sj));
  return out;
}

}  // namespace

Json scalar_to_json(const FieldPtr& f, const Scalar& s) {
  if (f->kind() == FieldKind::Extension) {
    Json arr = Json::array();
    for (auto c : s.coeffs()) arr.push_back(std::to_string(c));
    return arr;
  }
  return f->to_string(s);
}

Scalar scalar_from_json(const FieldPtr& f, const Json& j) {
  if (f->kind() == FieldKind::Extension) {
    if (!j.is_array() || static_cast<int>(j.size()) != f->degree())
      throw ParseError("extension scalar must be a coefficient array of length "
                       + std::to_string(f->degree()));
    std::vector<std::int64_t> coeffs;
    auto base = Field::make(FieldSpec::prime(f->characteristic()));
    for (const auto& cj : j) {
      if (!cj.is_string()) throw ParseError("scalar coefficients must be strings");
      coeffs.push_back(base->parse(cj.get<std::string>()).residue());
    }
    return Scalar(std::move(coeffs));
  }
  if (!j.is_string())
    throw ParseError("scalars must be strings (strict mode)");
  return f->parse(j.get<std::string>());
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j)
      row.push_back(scalar_to_json(m.field(), m.at(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const FieldPtr& f, const Json& j, std::size_t rows,
                        std::size_t cols) {
  if (!j.is_array() || j.size() != rows)
    throw ParseError("matrix must have " + std::to_string(rows) + " rows");
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j[i];
    if (!row.is_array() || row.size() != cols)
      throw ParseError("matrix row must have " + std::to_string(cols) + " entries");
    for (std::size_t c = 0; c < cols; ++c) m.at(i, c) = scalar_from_json(f, row[c]);
  }
  return m;
}

Json field_to_json(const FieldSpec& spec) {
  Json j;
  switch (spec.kind) {
    case FieldKind::Prime:
      j["kind"] = "prime";
      j["p"] = spec.p;
      break;
    case FieldKind::Extension: {
      j["kind"] = "extension";
      j["p"] = spec.p;
      Json mod = Json::array();
      for (auto c : spec.modulus) mod.push_back(std::to_string(c));
      j["modulus"] = std::move(mod);
      break;
    }
    case FieldKind::Rational:
      j["kind"] = "rational";
      break;
  }
  return j;
}

FieldSpec field_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
    throw ParseError("field spec must be an object with a 'kind'");
  std::string kind = j["kind"].get<std::string>();
  if (kind == "rational") {
    require_keys(j, {"kind"}, {}, "field");
    return FieldSpec::rationals();
  }
  if (kind == "prime") {
    require_keys(j, {"kind", "p"}, {}, "field");
    if (!j["p"].is_number_integer()) throw ParseError("field p must be an integer");
    return FieldSpec::prime(j["p"].get<std::int64_t>());
  }
  if (kind == "extension") {
    require_keys(j, {"kind", "p", "modulus"}, {}, "field");
    if (!j["p"].is_number_integer()) throw ParseError("field p must be an integer");
    if (!j["modulus"].is_array()) throw ParseError("modulus must be an array");
    std::vector<std::int64_t> mod;
    for (const auto& cj : j["modulus"]) {
      if (!cj.is_string()) throw ParseError("modulus coefficients must be strings");
      const std::string& text = cj.get<std::string>();
      if (text.empty() || text.size() > 6 ||
          text.find_first_not_of("0123456789") != std::string::npos)
        throw ParseError("bad modulus coefficient '" + text + "'");
      mod.push_back(std::stoll(text));
    }
    return FieldSpec::extension(j["p"].get<std::int64_t>(), std::move(mod));
  }
  throw ParseError("unknown field kind '" + kind + "'");
}

InstanceDocument parse_instance(const std::string& text) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  return parse_instance_json(doc);
}

InstanceDocument parse_instance_json(const Json& doc) {
  if (!doc.is_object()) throw ParseError("instance document must be an object");
  require_keys(doc, {"field", "n"},
               {"name", "s_gens", "t_gens", "g_gens", "r_gens", "metadata"},
               "instance");
  InstanceDocument out;
  out.instance.field = Field::make(field_from_json(doc["field"]));
  if (!doc["n"].is_number_unsigned() || doc["n"].get<std::uint64_t>() == 0)
    throw ParseError("n must be a positive integer");
  out.instance.n = doc["n"].get<std::size_t>();
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ParseError("name must be a string");
    out.instance.name = doc["name"].get<std::string>();
  }
  const FieldPtr& f = out.instance.field;
  std::size_t n = out.instance.n;
  if (doc.contains("s_gens"))
    out.instance.s_gens = gens_from_json(f, doc["s_gens"], n, "s_gens");
  if (doc.contains("t_gens"))
    out.instance.t_gens = gens_from_json(f, doc["t_gens"], n, "t_gens");
  if (doc.contains("g_gens"))
    out.instance.g_gens = gens_from_json(f, doc["g_gens"], n, "g_gens");
  if (doc.contains("r_gens"))
    out.instance.r_gens = gens_from_json(f, doc["r_gens"], n, "r_gens");
  if (doc.contains("metadata")) out.metadata = doc["metadata"];
  out.instance.validate();
  return out;
}

Json instance_to_json(const InstanceDocument& doc) {
  Json j;
  if (!doc.instance.name.empty()) j["name"] = doc.instance.name;
  j["field"] = field_to_json(doc.instance.field->spec());
  j["n"] = doc.instance.n;
  if (!doc.instance.s_gens.empty()) j["s_gens"] = gens_to_json(doc.instance.s_gens);
  if (!doc.instance.t_gens.empty()) j["t_gens"] = gens_to_json(doc.instance.t_gens);
  if (!doc.instance.g_gens.empty()) j["g_gens"] = gens_to_json(doc.instance.g_gens);
  if (!doc.instance.r_gens.empty()) j["r_gens"] = gens_to_json(doc.instance.r_gens);
  if (!doc.metadata.is_null()) j["metadata"] = doc.metadata;
  return j;
}

namespace {

Json image_matrix_to_json(const FieldPtr& f, const std::vector<std::vector<Vec>>& img) {
  Json rows = Json::array();
  for (const auto& row : img) {
    Json jrow = Json::array();
    for (const auto& entry : row) jrow.push_back(k_element_to_json(f, entry));
    rows.push_back(std::move(jrow));
  }
  return rows;
}

std::vector<std::vector<Vec>> image_matrix_from_json(const FieldPtr& f, const Json& j,
                                                     std::size_t blocks,
                                                     std::size_t d) {
  if (!j.is_array() || j.size() != blocks)
    throw ParseError("generator image must be a blocks x blocks array");
  std::vector<std::vector<Vec>> out;
  for (const auto& rowj : j) {
    if (!rowj.is_array() || rowj.size() != blocks)
      throw ParseError("generator image must be a blocks x blocks array");
    std::vector<Vec> row;
    for (const auto& ej : rowj) row.push_back(k_element_from_json(f, ej, d));
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace

Json certificate_to_json(const LinearizationCertificate& cert,
                         const std::string& instance_name) {
  FieldPtr f = Field::make(cert.field);
  Json j;
  j["format"] = "linearization-certificate/1";
  if (!instance_name.empty()) j["instance"] = instance_name;
  j["field"] = field_to_json(cert.field);
  j["n"] = cert.n;
  j["delta"] = cert.delta;
  j["blocks"] = cert.blocks;

  Json k;
  k["dim"] = cert.k.dim;
  k["commutative"] = cert.k.commutative;
  k["unit"] = k_element_to_json(f, cert.k.unit);
  Json constants = Json::array();
  for (const auto& row : cert.k.constants) {
    Json jrow = Json::array();
    for (const auto& entry : row) jrow.push_back(k_element_to_json(f, entry));
    constants.push_back(std::move(jrow));
  }
  k["structure_constants"] = std::move(constants);
  j["skew_field"] = std::move(k);

  j["adapted_basis"] = matrix_to_json(cert.adapted_basis);
  Json simgs = Json::array();
  for (const auto& img : cert.s_images) simgs.push_back(image_matrix_to_json(f, img));
  j["s_generator_images"] = std::move(simgs);
  if (!cert.t_images.empty()) {
    Json timgs = Json::array();
    for (const auto& img : cert.t_images) timgs.push_back(k_element_to_json(f, img));
    j["t_generator_images"] = std::move(timgs);
  }
  if (!cert.g_images.empty()) {
    Json gimgs = Json::array();
    for (const auto& img : cert.g_images) gimgs.push_back(image_matrix_to_json(f, img));
    j["g_generator_images"] = std::move(gimgs);
  }
  if (!cert.r_images.empty()) {
    Json rimgs = Json::array();
    for (const auto& img : cert.r_images) rimgs.push_back(k_element_to_json(f, img));
    j["r_generator_images"] = std::move(rimgs);
  }
  Json dims;
  dims["algebra"] = cert.dim_algebra;
  dims["commutant"] = cert.dim_commutant;
  j["dims"] = std::move(dims);
  Json log = Json::array();
  for (const auto& entry : cert.check_log) {
    Json le;
    le["claim"] = entry.claim;
    le["status"] = entry.status;
    log.push_back(std::move(le));
  }
  j["check_log"] = std::move(log);
  return j;
}

LinearizationCertificate parse_certificate(const Json& doc) {
  if (!doc.is_object()) throw ParseError("certificate must be an object");
  require_keys(doc,
               {"format", "field", "n", "delta", "blocks", "skew_field",
                "adapted_basis", "s_generator_images", "dims", "check_log"},
               {"instance", "t_generator_images", "g_generator_images",
                "r_generator_images", "nesin_poizat"},
               "certificate");
  if (doc["format"].get<std::string>() != "linearization-certificate/1")
    throw ParseError("unknown certificate format");
  LinearizationCertificate cert;
  cert.field = field_from_json(doc["field"]);
  FieldPtr f = Field::make(cert.field);
  cert.n = doc["n"].get<std::size_t>();
  cert.delta = doc["delta"].get<std::size_t>();
  cert.blocks = doc["blocks"].get<std::size_t>();

  const Json& k = doc["skew_field"];
  require_keys(k, {"dim", "commutative", "unit", "structure_constants"}, {},
               "skew_field");
  cert.k.field = cert.field;
  cert.k.dim = k["dim"].get<std::size_t>();
  cert.k.commutative = k["commutative"].get<bool>();
  cert.k.unit = k_element_from_json(f, k["unit"], cert.k.dim);
  const Json& constants = k["structure_constants"];
  if (!constants.is_array() || constants.size() != cert.k.dim)
    throw ParseError("structure_constants must be a dim x dim array");
  for (const auto& rowj : constants) {
    if (!rowj.is_array() || rowj.size() != cert.k.dim)
      throw ParseError("structure_constants must be a dim x dim array");
    std::vector<Vec> row;
    for (const auto& ej : rowj) row.push_back(k_element_from_json(f, ej, cert.k.dim));
    cert.k.constants.push_back(std::move(row));
  }

  cert.adapted_basis = matrix_from_json(f, doc["adapted_basis"], cert.n, cert.n);
  for (const auto& img : doc["s_generator_images"])
    cert.s_images.push_back(image_matrix_from_json(f, img, cert.blocks, cert.k.dim));
  if (doc.contains("t_generator_images"))
    for (const auto& img : doc["t_generator_images"])
      cert.t_images.push_back(k_element_from_json(f, img, cert.k.dim));
  if (doc.contains("g_generator_images"))
    for (const auto& img : doc["g_generator_images"])
      cert.g_images.push_back(image_matrix_from_json(f, img, cert.blocks, cert.k.dim));
  if (doc.contains("r_generator_images"))
    for (const auto& img : doc["r_generator_images"])
      cert.r_images.push_back(k_element_from_json(f, img, cert.k.dim));

  const Json& dims = doc["dims"];
  require_keys(dims, {"algebra", "commutant"}, {}, "dims");
  cert.dim_algebra = dims["algebra"].get<std::size_t>();
  cert.dim_commutant = dims["commutant"].get<std::size_t>();
  for (const auto& le : doc["check_log"])
    cert.check_log.push_back(
        {le.at("claim").get<std::string>(), le.at("status").get<std::string>()});
  return cert;
}

Json np_report_to_json(const NPReport& report, const FieldPtr& field) {
  Json j;
  auto subspace_rows = [&](const Subspace& s) {
    Json rows = Json::array();
    for (const auto& b : s.basis()) {
      Json row = Json::array();
      for (const auto& c : b) row.push_back(scalar_to_json(field, c));
      rows.push_back(std::move(row));
    }
    return rows;
  };
  j["w"] = subspace_rows(report.w);
  j["w_dim"] = report.w.dim();
  j["p_ideal"] = subspace_rows(report.p_ideal);
  j["p_ideal_dim"] = report.p_ideal.dim();
  j["conjugate_count"] = report.conjugates.size();
  Json conj = Json::array();
  for (const auto& c : report.conjugates) conj.push_back(subspace_rows(c));
  j["conjugates"] = std::move(conj);
  if (!report.avoidance.empty()) {
    Json av = Json::array();
    for (const auto& a : report.avoidance) av.push_back(matrix_to_json(a));
    j["avoidance_witnesses"] = std::move(av);
  }
  j["sum_witness_count"] = report.sum_witnesses.size();
  j["sum_direct"] = report.sum_direct;
  if (report.frac) {
    Json fr;
    fr["dim"] = report.frac->dim;
    fr["commutative"] = report.frac->commutative;
    fr["unit"] = k_element_to_json(field, report.frac->unit);
    Json constants = Json::array();
    for (const auto& row : report.frac->constants) {
      Json jrow = Json::array();
      for (const auto& entry : row) jrow.push_back(k_element_to_json(field, entry));
      constants.push_back(std::move(jrow));
    }
    fr["structure_constants"] = std::move(constants);
    j["frac"] = std::move(fr);
  }
  return j;
}

}  // namespace skewlin
