#include "disckit/ingest.hpp"

#include <zlib.h>

#include <algorithm>
#include <cstring>
#include <fstream>

#include "disckit/rng.hpp"

namespace disckit {

// ------------------------------------------------------------- gaussians

LabeledDataset gen_gaussian_domain(const GaussianDomainSpec& spec) {
    if (spec.n_per_class < 1) throw ShapeError("n_per_class must be >= 1");
    if (spec.mean_pos.size() != spec.mean_neg.size() || spec.mean_pos.empty())
        throw ShapeError("class means must be nonempty and of equal dimension");
    const std::size_t d = spec.mean_pos.size();
    const std::size_t n = 2 * spec.n_per_class;

    Rng rng(spec.seed);
    Matrix x(n, d);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool pos = i < spec.n_per_class;
        const auto& mu = pos ? spec.mean_pos : spec.mean_neg;
        for (std::size_t j = 0; j < d; ++j) x.at(i, j) = mu[j] + rng.normal();
        y[i] = pos ? 1.0 : -1.0;
    }
    return make_labeled(std::move(x), std::move(y));
}

// ------------------------------------------------------------- blob images

LabeledDataset gen_blob_images(const BlobImageSpec& spec) {
    if (spec.n_per_class < 1) throw ShapeError("n_per_class must be >= 1");
    if (spec.blob_side == 0 || spec.blob_side > spec.side)
        throw ShapeError("blob_side must be in [1, side]");
    const std::size_t s = spec.side;
    const std::size_t d = s * s;
    const std::size_t n = 2 * spec.n_per_class;

    Rng rng(spec.seed);
    Matrix x(n, d);
    std::vector<double> y(n);
    for (std::size_t i = 0; i < n; ++i) {
        bool pos = i < spec.n_per_class;
        // +1 blob at the top-left corner, -1 at the bottom-right.
        std::size_t r0 = pos ? 0 : s - spec.blob_side;
        std::size_t c0 = r0;
        for (std::size_t r = 0; r < s; ++r) {
            for (std::size_t c = 0; c < s; ++c) {
                bool in_blob = r >= r0 && r < r0 + spec.blob_side && c >= c0 &&
                               c < c0 + spec.blob_side;
                double v = spec.background + (in_blob ? spec.blob_delta : 0.0) +
                           rng.normal(0.0, spec.jitter_sigma);
                x.at(i, r * s + c) = std::clamp(v, 0.0, 255.0);
            }
        }
        y[i] = pos ? 1.0 : -1.0;
    }
    return make_labeled(std::move(x), std::move(y));
}

LabeledDataset scale_unit(const LabeledDataset& d) {
    LabeledDataset out = d;
    for (double& v : out.features.data) v /= 255.0;
    return out;
}

UnlabeledDataset scale_unit(const UnlabeledDataset& d) {
    UnlabeledDataset out = d;
    for (double& v : out.features.data) v /= 255.0;
    return out;
}

// ------------------------------------------------------------- idx format

namespace {

bool is_gzip(const std::vector<std::uint8_t>& bytes) {
    return bytes.size() >= 2 && bytes[0] == 0x1f && bytes[1] == 0x8b;
}

std::vector<std::uint8_t> gunzip(const std::vector<std::uint8_t>& bytes) {
    z_stream zs;
    std::memset(&zs, 0, sizeof(zs));
    if (inflateInit2(&zs, 15 + 16) != Z_OK)
        throw ParseError("gzip: inflateInit failed", 0);
    std::vector<std::uint8_t> out;
    std::uint8_t buf[1 << 15];
    zs.next_in = const_cast<Bytef*>(bytes.data());
    zs.avail_in = static_cast<uInt>(bytes.size());
    int rc = Z_OK;
    do {
        zs.next_out = buf;
        zs.avail_out = sizeof(buf);
        rc = inflate(&zs, Z_NO_FLUSH);
        if (rc != Z_OK && rc != Z_STREAM_END) {
            std::size_t at = bytes.size() - zs.avail_in;
            inflateEnd(&zs);
            throw ParseError("gzip: corrupt stream", at);
        }
        out.insert(out.end(), buf, buf + (sizeof(buf) - zs.avail_out));
    } while (rc != Z_STREAM_END);
    inflateEnd(&zs);
    return out;
}

std::uint32_t read_be32(const std::vector<std::uint8_t>& b, std::size_t at) {
    return (std::uint32_t(b[at]) << 24) | (std::uint32_t(b[at + 1]) << 16) |
           (std::uint32_t(b[at + 2]) << 8) | std::uint32_t(b[at + 3]);
}

}  // namespace

IdxTensor read_idx(const std::vector<std::uint8_t>& raw) {
    const std::vector<std::uint8_t>& bytes = is_gzip(raw) ? gunzip(raw) : raw;

    if (bytes.size() < 4)
        throw ParseError("idx: truncated header", bytes.size());
    if (bytes[0] != 0x00)
        throw ParseError("idx: bad magic byte", 0);
    if (bytes[1] != 0x00)
        throw ParseError("idx: bad magic byte", 1);
    const std::uint8_t type = bytes[2];
    if (type != 0x08 && type != 0x0D)
        throw ParseError("idx: unsupported type code 0x" + std::to_string(type), 2);
    const std::size_t ndims = bytes[3];
    if (ndims == 0)
        throw ParseError("idx: zero-dimensional tensor", 3);

    std::size_t at = 4;
    IdxTensor t;
    t.type_code = type;
    for (std::size_t k = 0; k < ndims; ++k, at += 4) {
        if (at + 4 > bytes.size())
            throw ParseError("idx: truncated dimension table", bytes.size());
        t.dims.push_back(read_be32(bytes, at));
    }

    const std::size_t count = t.count();
    const std::size_t elem = type == 0x08 ? 1 : 4;
    if (at + count * elem > bytes.size())
        throw ParseError("idx: truncated payload, need " +
                             std::to_string(at + count * elem - bytes.size()) +
                             " more byte(s)",
                         bytes.size());

    t.data.resize(count);
    if (type == 0x08) {
        for (std::size_t i = 0; i < count; ++i)
            t.data[i] = static_cast<double>(bytes[at + i]);
    } else {
        for (std::size_t i = 0; i < count; ++i) {
            std::uint32_t u = read_be32(bytes, at + 4 * i);
            float f;
            std::memcpy(&f, &u, sizeof(f));
            t.data[i] = static_cast<double>(f);
        }
    }
    return t;
}

std::vector<std::uint8_t> write_idx(const IdxTensor& t) {
    if (t.dims.empty()) throw ShapeError("idx: tensor needs at least one dim");
    if (t.count() != t.data.size())
        throw ShapeError("idx: product(dims) != data length");
    if (t.type_code != 0x08 && t.type_code != 0x0D)
        throw ShapeError("idx: unsupported type code");

    std::vector<std::uint8_t> out;
    out.reserve(4 + 4 * t.dims.size() + t.data.size() * (t.type_code == 0x08 ? 1 : 4));
    out.push_back(0x00);
    out.push_back(0x00);
    out.push_back(t.type_code);
    out.push_back(static_cast<std::uint8_t>(t.dims.size()));
    auto push_be32 = [&out](std::uint32_t v) {
        out.push_back(static_cast<std::uint8_t>(v >> 24));
        out.push_back(static_cast<std::uint8_t>(v >> 16));
        out.push_back(static_cast<std::uint8_t>(v >> 8));
        out.push_back(static_cast<std::uint8_t>(v));
    };
    for (auto d : t.dims) push_be32(d);
    if (t.type_code == 0x08) {
        for (double v : t.data)
            out.push_back(static_cast<std::uint8_t>(v));
    } else {
        for (double v : t.data) {
            float f = static_cast<float>(v);
            std::uint32_t u;
            std::memcpy(&u, &f, sizeof(u));
            push_be32(u);
        }
    }
    return out;
}

IdxTensor read_idx_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("idx: cannot open " + path, 0);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return read_idx(bytes);
}

Matrix idx_to_matrix(const IdxTensor& t) {
    if (t.dims.empty()) throw ShapeError("idx: empty tensor");
    std::size_t rows = t.dims[0];
    std::size_t cols = t.dims.size() == 1 ? 1 : t.count() / rows;
    Matrix m(rows, cols);
    m.data = t.data;
    return m;
}

// ------------------------------------------------------------- labels & bias

std::vector<double> even_odd_labels(const std::vector<int>& digits) {
    std::vector<double> out;
    out.reserve(digits.size());
    for (int d : digits) {
        if (d < 0 || d > 9)
            throw ShapeError("digit out of range 0..9: " + std::to_string(d));
        out.push_back(d % 2 == 0 ? 1.0 : -1.0);
    }
    return out;
}

LabeledDataset selection_bias_filter(const LabeledDataset& data,
                                     const std::vector<int>& digits,
                                     const std::set<int>& keep) {
    if (digits.size() != data.size())
        throw ShapeError("digit metadata length != dataset size");
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < digits.size(); ++i)
        if (keep.count(digits[i])) rows.push_back(i);
    if (rows.empty())
        throw ShapeError("selection filter removed every row");
    Matrix x(rows.size(), data.dim());
    std::vector<double> y(rows.size());
    for (std::size_t k = 0; k < rows.size(); ++k) {
        auto src = data.features.row(rows[k]);
        std::copy(src.begin(), src.end(), x.row(k).begin());
        y[k] = data.labels[rows[k]];
    }
    return make_labeled(std::move(x), std::move(y));
}

// ------------------------------------------------------------- corruption

LabeledDataset corrupt_gaussian_noise(const LabeledDataset& data, double sigma,
                                      double clip_lo, double clip_hi,
                                      std::uint64_t seed) {
    if (sigma < 0.0) throw ShapeError("sigma must be nonnegative");
    LabeledDataset out = data;
    if (sigma == 0.0) return out;
    Rng rng(seed);
    for (double& v : out.features.data)
        v = std::clamp(v + rng.normal(0.0, sigma), clip_lo, clip_hi);
    return out;
}

}  // namespace disckit
