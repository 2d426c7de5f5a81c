// ingest.hpp — data acquisition: synthetic domains, IDX ingestion, subsetting,
// noise corruption.
#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "disckit/core.hpp"

namespace disckit {

// ------------------------------------------------------------- gaussians

// Two-class isotropic Gaussian domain: n_per_class points N(mean_pos, I)
// labeled +1 followed by n_per_class points N(mean_neg, I) labeled -1.
struct GaussianDomainSpec {
    std::vector<double> mean_pos;
    std::vector<double> mean_neg;
    std::size_t n_per_class{0};
    std::uint64_t seed{0};
};

LabeledDataset gen_gaussian_domain(const GaussianDomainSpec& spec);

// ------------------------------------------------------------- blob images

// Synthetic grayscale "digit" images: side x side pixels in [0, 255], a
// square blob of extra intensity in one corner for +1 (top-left) and the
// opposite corner for -1 (bottom-right), plus per-pixel Gaussian jitter.
// Stands in for photo-corpus domains in the source-selection experiment.
struct BlobImageSpec {
    std::size_t side{6};
    std::size_t blob_side{2};
    double background{30.0};
    double blob_delta{25.0};
    double jitter_sigma{8.0};
    std::size_t n_per_class{0};
    std::uint64_t seed{0};
};

LabeledDataset gen_blob_images(const BlobImageSpec& spec);

// Pixel features 0..255 -> [0, 1] (applied after corruption/clipping).
LabeledDataset scale_unit(const LabeledDataset& d);
UnlabeledDataset scale_unit(const UnlabeledDataset& d);

// ------------------------------------------------------------- idx format

// IDX tensor: big-endian header (00 00 <type> <ndims>, then one u32 per dim),
// then the payload in row-major order. Supported type codes: 0x08 (unsigned
// byte) and 0x0D (single-precision float).
struct IdxTensor {
    std::uint8_t type_code{0x08};
    std::vector<std::uint32_t> dims;
    std::vector<double> data;  // exact carrier for both supported types

    std::size_t count() const {
        std::size_t n = 1;
        for (auto d : dims) n *= d;
        return n;
    }
};

// Parses an IDX byte stream; gzip-compressed input (1f 8b magic) is inflated
// transparently. ParseError::offset names the offending byte.
IdxTensor read_idx(const std::vector<std::uint8_t>& bytes);

std::vector<std::uint8_t> write_idx(const IdxTensor& t);

IdxTensor read_idx_file(const std::string& path);

// Flattens dims[0] x (rest) into one row per leading index.
Matrix idx_to_matrix(const IdxTensor& t);

// ------------------------------------------------------------- labels & bias

// Digits 0..9 -> even +1, odd -1.
std::vector<double> even_odd_labels(const std::vector<int>& digits);

// Keeps exactly the rows whose digit is in `keep`, order preserved.
// Throws ShapeError if the result would be empty.
LabeledDataset selection_bias_filter(const LabeledDataset& data,
                                     const std::vector<int>& digits,
                                     const std::set<int>& keep);

// ------------------------------------------------------------- corruption

// x' = clamp(x + N(0, sigma^2), clip_lo, clip_hi) elementwise; labels kept.
// sigma = 0 is the exact identity.
LabeledDataset corrupt_gaussian_noise(const LabeledDataset& data, double sigma,
                                      double clip_lo, double clip_hi,
                                      std::uint64_t seed);

}  // namespace disckit
