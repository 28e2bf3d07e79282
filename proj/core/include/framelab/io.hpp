#pragma once

// Frame files (JSON, schema_version "1") and report serialization.
//
// Frame file layout:
//   {
//     "schema_version": "1",
//     "dim": 2,
//     "field": "real" | "complex",
//     "vectors": [[[re, im], ...], ...],   // "real" files may use plain numbers
//     "index_positions": [0, 1, ...],
//     "geometry": "linear" | {"circular": N},
//     "label": "...",                        // optional
//     "provenance": {"generator": ..., "args": {...}, "seed": ...}   // optional
//   }

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "framelab/frame.hpp"
#include "framelab/localization.hpp"
#include "framelab/perturbation.hpp"

namespace framelab {

inline constexpr std::string_view kSchemaVersion = "1";
inline constexpr std::string_view kToolVersion = "0.1.0";

nlohmann::json frame_to_json(const FrameSystem& frame);
// Throws ParseError on malformed input.
FrameSystem frame_from_json(const nlohmann::json& doc);

std::string serialize_frame(const FrameSystem& frame);
FrameSystem parse_frame(std::string_view text);

void write_frame_file(const std::filesystem::path& path, const FrameSystem& frame);
FrameSystem read_frame_file(const std::filesystem::path& path);

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);

// FNV-1a 64-bit over raw bytes, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view bytes);
std::string file_digest(const std::filesystem::path& path);

nlohmann::json geometry_to_json(const IndexGeometry& geometry);
IndexGeometry geometry_from_json(const nlohmann::json& doc);

nlohmann::json to_json(const FrameBounds& bounds);
nlohmann::json to_json(const AtomicDecompositionBounds& bounds);
nlohmann::json to_json(const CertificateReport& report);
nlohmann::json to_json(const ChainReport& report);
nlohmann::json to_json(const DualLocalizationReport& report);

}  // namespace framelab
