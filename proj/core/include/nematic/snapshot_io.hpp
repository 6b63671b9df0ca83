#pragma once

#include <filesystem>

#include "nematic/field.hpp"

namespace nematic {

// Binary snapshot layout, all little-endian:
//   magic "QTF1" (tensor) or "QSF1" (scalar)
//   u32 n, f64 box_len, f64 time_tag
//   component planes of n^3 f64 each, x-fastest; tensors carry five planes
//   in (q11, q22, q12, q13, q23) order, scalars one.

void write_snapshot(const std::filesystem::path& path, const TensorField& f);
void write_snapshot(const std::filesystem::path& path, const ScalarField& f);

/// Throws MissingInput if the file cannot be opened, FormatError on a bad header
/// or truncated payload.
TensorField read_tensor_snapshot(const std::filesystem::path& path);
ScalarField read_scalar_snapshot(const std::filesystem::path& path);

enum class SnapshotKind { Tensor, Scalar };

/// Kind from the magic; throws like the readers.
SnapshotKind snapshot_kind(const std::filesystem::path& path);

/// Reads either kind; scalar files come back as their uniaxial lift.
TensorField read_snapshot_as_tensor(const std::filesystem::path& path);

}  // namespace nematic
