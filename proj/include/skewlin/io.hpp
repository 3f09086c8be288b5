#ifndef SKEWLIN_IO_HPP
#define SKEWLIN_IO_HPP

#include <json.hpp>

#include <string>

#include "skewlin/corollaries.hpp"
#include "skewlin/schur.hpp"

namespace skewlin {

using Json = nlohmann::ordered_json;

/// An instance file: the module presentation plus free-form metadata.
struct InstanceDocument {
  ModuleInstance instance;
  Json metadata;  // null when absent, preserved verbatim
};

/// Strict parsing: unknown keys, out-of-range residues, non-canonical
/// rationals, ragged matrices and singular g_gens are all rejected
/// (ParseError / ValidationError).
InstanceDocument parse_instance(const std::string& text);
InstanceDocument parse_instance_json(const Json& doc);
Json instance_to_json(const InstanceDocument& doc);

Json certificate_to_json(const LinearizationCertificate& cert,
                         const std::string& instance_name);
LinearizationCertificate parse_certificate(const Json& doc);

Json np_report_to_json(const NPReport& report, const FieldPtr& field);

// shared scalar/matrix codecs (also used by the CLI result documents)
Json scalar_to_json(const FieldPtr& f, const Scalar& s);
Scalar scalar_from_json(const FieldPtr& f, const Json& j);
Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const FieldPtr& f, const Json& j, std::size_t rows,
                        std::size_t cols);
Json field_to_json(const FieldSpec& spec);
FieldSpec field_from_json(const Json& j);

}  // namespace skewlin

#endif
