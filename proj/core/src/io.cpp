#include "framelab/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "framelab/error.hpp"

namespace framelab {

using nlohmann::json;

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

double finite_number(const json& value, const char* what) {
  if (!value.is_number()) parse_fail(std::string(what) + " must be a number");
  const double x = value.get<double>();
  if (!std::isfinite(x)) parse_fail(std::string(what) + " must be finite");
  return x;
}

Complex parse_scalar(const json& value) {
  if (value.is_number()) return {finite_number(value, "entry"), 0.0};
  if (value.is_array() && value.size() == 2) {
    return {finite_number(value[0], "real part"), finite_number(value[1], "imaginary part")};
  }
  parse_fail("vector entries must be numbers or [re, im] pairs");
}

}  // namespace

json geometry_to_json(const IndexGeometry& geometry) {
  if (geometry.kind() == IndexGeometry::Kind::kLinear) return "linear";
  return json{{"circular", geometry.period()}};
}

IndexGeometry geometry_from_json(const json& doc) {
  if (doc.is_string() && doc.get<std::string>() == "linear") return IndexGeometry::linear();
  if (doc.is_object() && doc.size() == 1 && doc.contains("circular") && doc["circular"].is_number_integer()) {
    const auto period = doc["circular"].get<std::int64_t>();
    if (period < 1) parse_fail("circular period must be >= 1");
    return IndexGeometry::circular(period);
  }
  parse_fail("geometry must be \"linear\" or {\"circular\": N}");
}

json frame_to_json(const FrameSystem& frame) {
  const bool real = frame.is_real();
  json vectors = json::array();
  for (const Vector& v : frame.elements()) {
    json row = json::array();
    for (const Complex& z : v) {
      if (real) {
        row.push_back(z.real());
      } else {
        row.push_back(json::array({z.real(), z.imag()}));
      }
    }
    vectors.push_back(std::move(row));
  }
  json doc{{"schema_version", kSchemaVersion},
           {"dim", frame.dim()},
           {"field", real ? "real" : "complex"},
           {"vectors", std::move(vectors)},
           {"index_positions", std::vector<std::int64_t>(frame.positions().begin(), frame.positions().end())},
           {"geometry", geometry_to_json(frame.geometry())}};
  if (!frame.label().empty()) doc["label"] = frame.label();
  if (const auto& prov = frame.provenance()) {
    doc["provenance"] = {{"generator", prov->generator}, {"args", prov->args}, {"seed", prov->seed}};
  }
  return doc;
}

FrameSystem frame_from_json(const json& doc) {
  if (!doc.is_object()) parse_fail("frame file must be a JSON object");
  if (!doc.contains("schema_version") || doc["schema_version"] != kSchemaVersion) {
    parse_fail("unsupported or missing schema_version (expected \"1\")");
  }
  if (!doc.contains("dim") || !doc["dim"].is_number_unsigned()) parse_fail("dim must be a positive integer");
  const auto dim = doc["dim"].get<std::size_t>();
  const std::string field = doc.value("field", std::string("complex"));
  if (field != "real" && field != "complex") parse_fail("field must be \"real\" or \"complex\"");
  if (!doc.contains("vectors") || !doc["vectors"].is_array()) parse_fail("vectors must be an array");

  std::vector<Vector> elements;
  for (const json& row : doc["vectors"]) {
    if (!row.is_array() || row.size() != dim) parse_fail("every vector must have dim entries");
    Vector v;
    v.reserve(dim);
    for (const json& entry : row) {
      const Complex z = parse_scalar(entry);
      if (field == "real" && z.imag() != 0.0) parse_fail("complex entry in a real frame file");
      v.push_back(z);
    }
    elements.push_back(std::move(v));
  }

  std::vector<std::int64_t> positions;
  if (doc.contains("index_positions")) {
    if (!doc["index_positions"].is_array()) parse_fail("index_positions must be an array");
    for (const json& p : doc["index_positions"]) {
      if (!p.is_number_integer()) parse_fail("index positions must be integers");
      positions.push_back(p.get<std::int64_t>());
    }
  }
  const IndexGeometry geometry = doc.contains("geometry") ? geometry_from_json(doc["geometry"]) : IndexGeometry::linear();
  const std::string label = doc.value("label", std::string{});

  try {
    FrameSystem frame(dim, std::move(elements), std::move(positions), label, geometry);
    if (doc.contains("provenance")) {
      const json& p = doc["provenance"];
      if (!p.is_object() || !p.contains("generator") || !p["generator"].is_string()) {
        parse_fail("provenance needs a generator name");
      }
      Provenance prov{p["generator"].get<std::string>(), p.value("args", json::object()),
                      p.value("seed", std::uint64_t{0})};
      frame = frame.with_provenance(std::move(prov));
    }
    return frame;
  } catch (const Error& err) {
    if (err.code() == ErrorCode::kParseError) throw;
    parse_fail(err.what());
  } catch (const json::exception& err) {
    parse_fail(err.what());
  }
}

std::string serialize_frame(const FrameSystem& frame) { return frame_to_json(frame).dump(2) + "\n"; }

FrameSystem parse_frame(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& err) {
    parse_fail(err.what());
  }
  return frame_from_json(doc);
}

void write_frame_file(const std::filesystem::path& path, const FrameSystem& frame) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kInvalidArgument, "cannot open " + path.string() + " for writing");
  out << serialize_frame(frame);
}

namespace {

std::string slurp(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FrameSystem read_frame_file(const std::filesystem::path& path) { return parse_frame(slurp(path)); }

std::string format_double(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
  return std::string(buf, ptr);
}

std::string fnv1a64_hex(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ULL;
  }
  char buf[17];
  static constexpr char kHex[] = "0123456789abcdef";
  for (int i = 15; i >= 0; --i) {
    buf[i] = kHex[hash & 0xF];
    hash >>= 4;
  }
  buf[16] = '\0';
  return buf;
}

std::string file_digest(const std::filesystem::path& path) { return fnv1a64_hex(slurp(path)); }

json to_json(const FrameBounds& bounds) { return {{"A", bounds.lower}, {"B", bounds.upper}}; }

json to_json(const AtomicDecompositionBounds& bounds) {
  return {{"p", bounds.p.to_string()},
          {"A_p", bounds.lower},
          {"B_p", bounds.upper},
          {"method", to_string(bounds.method)},
          {"A_p_sampled", bounds.lower_sampled},
          {"B_p_sampled", bounds.upper_sampled}};
}

json to_json(const CertificateReport& report) {
  json values = json::object();
  for (const auto& nv : report.hypothesis_values) values[nv.name] = nv.value;
  json doc{{"certificate", to_string(report.id)},
           {"hypothesis_values", std::move(values)},
           {"hypothesis_holds", report.hypothesis_holds},
           {"reference_bounds", to_json(report.reference_bounds)},
           {"bracketing_ok", report.bracketing_ok},
           {"theorem_contradiction", report.theorem_contradiction},
           {"notes", report.notes}};
  doc["predicted_bounds"] = report.predicted ? to_json(*report.predicted) : json(nullptr);
  doc["actual_bounds"] = report.actual ? to_json(*report.actual) : json(nullptr);
  if (report.id == CertificateId::kAtomicStability) {
    json rows = json::array();
    for (const auto& cmp : report.atomic) {
      json row{{"p", cmp.p.to_string()},
               {"reference", to_json(cmp.reference)},
               {"intermediate_worst_ratio", cmp.intermediate_worst_ratio},
               {"intermediate_ok", cmp.intermediate_ok},
               {"bracketing_ok", cmp.bracketing_ok}};
      row["predicted"] = cmp.predicted ? json{{"A_p", cmp.predicted->lower}, {"B_p", cmp.predicted->upper}}
                                       : json(nullptr);
      row["actual"] = cmp.actual ? to_json(*cmp.actual) : json(nullptr);
      rows.push_back(std::move(row));
    }
    doc["per_p"] = std::move(rows);
  }
  return doc;
}

json to_json(const ChainReport& r) {
  return {{"eps", r.eps},
          {"q_i", r.q_i},
          {"q_ii", r.q_ii},
          {"q_iii", r.q_iii},
          {"q_unif", r.q_unif},
          {"gamma", r.gamma},
          {"premise_holds", r.premise_holds},
          {"i_holds", r.i_holds},
          {"ii_holds", r.ii_holds},
          {"iii_holds", r.iii_holds},
          {"iii_sampled_slack", r.iii_sampled_slack},
          {"i_implies_ii", r.i_implies_ii},
          {"ii_implies_iii", r.ii_implies_iii},
          {"chain_holds", r.chain_holds}};
}

json to_json(const DualLocalizationReport& r) {
  return {{"s", r.s},
          {"gamma_frame", r.frame_norm},
          {"gamma_dual", r.dual_norm},
          {"threshold", r.threshold},
          {"passes", r.passes}};
}

}  // namespace framelab
