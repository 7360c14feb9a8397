#pragma once

#include <json.hpp>
#include <string>
#include <vector>

#include "opalg/algebra.hpp"
#include "opalg/blocks.hpp"
#include "opalg/gallery.hpp"
#include "opalg/linalg.hpp"
#include "opalg/seminorms.hpp"

namespace opalg::io {

using Json = nlohmann::ordered_json;

/// {"dim": n, "entries": [[[re, im], ...], ...]}, row-major.
Json matrix_to_json(const CMatrix& m);
/// Throws InvalidInput on ragged rows, a dim mismatch or non-numeric entries.
CMatrix matrix_from_json(const Json& j);

/// {"ambient_dim": n, "unital": b, "selfadjoint": b, "basis": [matrix, ...]}.
Json algebra_to_json(const MatrixAlgebra& a);
/// The basis is kept verbatim when it is already orthonormal, otherwise it is
/// re-orthonormalized. Declared flags must match the detected ones.
MatrixAlgebra algebra_from_json(const Json& j, const NumericConfig& cfg);

/// A JSON list of matrices.
std::vector<CMatrix> generators_from_json(const Json& j);

/// {"blocks": [{"s": s, "m": m}, ...], "unitary": matrix}.
Json block_structure_to_json(const BlockStructure& bs);
BlockStructure block_structure_from_json(const Json& j);

/// {"value", "lower", "upper", "converged", "witness", "iterations"}.
Json distance_report_to_json(const DistanceReport& r);
DistanceReport distance_report_from_json(const Json& j);

Json derivation_report_to_json(const DerivationReport& r);
Json kn_estimate_to_json(const KnEstimate& k);

Json config_to_json(const NumericConfig& cfg);
NumericConfig config_from_json(const Json& j);

Json gallery_item_to_json(const gallery::GalleryItem& it, bool with_result);
/// {"items": [{"name", "params", "claim", "citation"}, ...]}.
Json gallery_manifest();

/// Serialization used for every report: two-space indent, trailing newline.
std::string dump(const Json& j);

Json read_json_file(const std::string& path);

}  // namespace opalg::io
