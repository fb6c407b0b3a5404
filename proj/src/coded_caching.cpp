#include "edgecast/coded_caching.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "edgecast/gf256.hpp"
#include "edgecast/rng.hpp"

namespace edgecast::caching {

std::int64_t binomial(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    std::int64_t result = 1;
    for (int i = 1; i <= k; ++i) {
        if (result > (std::int64_t{1} << 56) / (n - k + i))
            throw std::overflow_error("binomial: value too large");
        result = result * (n - k + i) / i;
    }
    return result;
}

std::vector<Subset> subsets_lex(int n, int k) {
    std::vector<Subset> out;
    if (k < 0 || k > n) return out;
    Subset current(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) current[static_cast<std::size_t>(i)] = i;
    for (;;) {
        out.push_back(current);
        int i = k - 1;
        while (i >= 0 && current[static_cast<std::size_t>(i)] == n - k + i) --i;
        if (i < 0) break;
        ++current[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < k; ++j)
            current[static_cast<std::size_t>(j)] = current[static_cast<std::size_t>(j - 1)] + 1;
    }
    return out;
}

Library::Library(std::vector<Bytes> files) : files_(std::move(files)) {
    if (files_.empty()) throw std::invalid_argument("library: need at least one file");
    file_bytes_ = files_.front().size();
    for (const auto& f : files_)
        if (f.size() != file_bytes_)
            throw std::invalid_argument("library: all files must have the same length");
}

Library Library::random(int n_files, std::size_t bytes_per_file, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<Bytes> files(static_cast<std::size_t>(n_files));
    for (auto& f : files) {
        f.resize(bytes_per_file);
        for (auto& b : f) b = static_cast<std::uint8_t>(rng.bits() & 0xff);
    }
    return Library(std::move(files));
}

std::int64_t CacheAssignment::cached_bits_per_user() const {
    if (per_user.empty()) return 0;
    return static_cast<std::int64_t>(per_user.front().size()) *
           static_cast<std::int64_t>(segment_bytes) * 8;
}

Bytes MulticastCodeword::concatenated() const {
    Bytes out;
    for (const auto& [subset, block] : blocks) out.insert(out.end(), block.begin(), block.end());
    return out;
}

CacheAssignment place_caches(int users, int n_files, int cache_files, const Library& library) {
    if (users < 1) throw std::invalid_argument("place_caches: need at least one user");
    if (library.file_count() != n_files)
        throw std::invalid_argument("place_caches: library size does not match N");
    if (cache_files < 1 || cache_files > n_files)
        throw std::invalid_argument("place_caches: need 1 <= M <= N");
    const std::int64_t tk = static_cast<std::int64_t>(cache_files) * users;
    if (tk % n_files != 0)
        throw std::invalid_argument(
            "place_caches: t = MK/N is not an integer (memory sharing is out of scope); "
            "choose M, K, N with N | MK");
    const int t = static_cast<int>(tk / n_files);
    if (t < 1 || t > users) throw std::invalid_argument("place_caches: need 1 <= t <= K");

    const std::int64_t n_segments = binomial(users, t);
    if (library.file_bytes() % static_cast<std::size_t>(n_segments) != 0)
        throw std::invalid_argument("place_caches: file size (bytes) must be divisible by C(K,t)");

    CacheAssignment a;
    a.users = users;
    a.t = t;
    a.segment_bytes = library.file_bytes() / static_cast<std::size_t>(n_segments);
    a.segment_subsets = subsets_lex(users, t);
    a.segments.resize(static_cast<std::size_t>(n_files));
    a.per_user.resize(static_cast<std::size_t>(users));

    for (int i = 0; i < n_files; ++i) {
        const Bytes& file = library.file(i);
        std::size_t offset = 0;
        for (const auto& subset : a.segment_subsets) {
            Bytes segment(file.begin() + static_cast<std::ptrdiff_t>(offset),
                          file.begin() + static_cast<std::ptrdiff_t>(offset + a.segment_bytes));
            a.segments[static_cast<std::size_t>(i)].emplace(subset, std::move(segment));
            offset += a.segment_bytes;
            for (int k : subset) a.per_user[static_cast<std::size_t>(k)].emplace_back(i, subset);
        }
    }
    return a;
}

namespace {

void xor_into(Bytes& acc, const Bytes& src) {
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] ^= src[i];
}

const Bytes& cached_segment(const CacheAssignment& a, int file, const Subset& subset) {
    const auto& per_file = a.segments.at(static_cast<std::size_t>(file));
    const auto it = per_file.find(subset);
    if (it == per_file.end())
        throw std::runtime_error("coded_caching: cached segment missing (integrity error)");
    return it->second;
}

}  // namespace

MulticastCodeword build_multicast_codeword(const std::vector<int>& demand,
                                           const CacheAssignment& assignment,
                                           const Library& library) {
    if (static_cast<int>(demand.size()) != assignment.users)
        throw std::invalid_argument("build_multicast_codeword: demand length must equal K");
    for (int d : demand)
        if (d < 0 || d >= library.file_count())
            throw std::invalid_argument("build_multicast_codeword: demand entry out of range");

    MulticastCodeword cw;
    for (const auto& s : subsets_lex(assignment.users, assignment.t + 1)) {
        Bytes block(assignment.segment_bytes, 0);
        for (int k : s) {
            Subset rest;
            rest.reserve(s.size() - 1);
            for (int j : s)
                if (j != k) rest.push_back(j);
            xor_into(block, cached_segment(assignment, demand[static_cast<std::size_t>(k)], rest));
        }
        cw.total_bits += static_cast<std::int64_t>(block.size()) * 8;
        cw.blocks.emplace(s, std::move(block));
    }
    return cw;
}

std::int64_t codeword_length_bits(int users, std::int64_t mu_num, std::int64_t mu_den,
                                  std::int64_t file_bits) {
    if (users < 1 || file_bits < 0) throw std::invalid_argument("codeword_length_bits: bad arguments");
    if (mu_den <= 0 || mu_num <= 0 || mu_num > mu_den)
        throw std::invalid_argument("codeword_length_bits: need 0 < mu <= 1");
    // t = K mu must be an integer.
    const std::int64_t kt_num = static_cast<std::int64_t>(users) * mu_num;
    if (kt_num % mu_den != 0)
        throw std::invalid_argument("codeword_length_bits: K mu is not an integer");
    const std::int64_t t = kt_num / mu_den;
    // F K (1-mu) / (1+K mu) reduces exactly to F (K-t) / (1+t).
    const std::int64_t numerator = file_bits * (users - t);
    if (numerator % (1 + t) != 0)
        throw std::invalid_argument("codeword_length_bits: non-integral length (inconsistent parameters)");
    return numerator / (1 + t);
}

// ---- MDS layer -------------------------------------------------------------
//
// Systematic generator [I; A] over GF(256) with A a diagonally rescaled Cauchy
// matrix: A[r][j] = (y_r + x_0)(y_0 + x_j) / ((y_0 + x_0)(y_r + x_j)),
// x_j = j, y_r = k_data + r. Every square submatrix of a rescaled Cauchy
// matrix is nonsingular, so every k_data-subset of blocks decodes; the
// rescaling makes parity row 0 the plain XOR of the data blocks (and the code
// a repetition code for k_data = 1).

namespace {

std::uint8_t cauchy_entry(int r, int j, int k_data) {
    using namespace gf256;
    const auto x = [](int idx) { return static_cast<std::uint8_t>(idx); };
    const auto y = [&](int idx) { return static_cast<std::uint8_t>(k_data + idx); };
    const std::uint8_t num = mul(add(y(r), x(0)), add(y(0), x(j)));
    const std::uint8_t den = mul(add(y(0), x(0)), add(y(r), x(j)));
    return div(num, den);
}

std::vector<std::uint8_t> generator_row(int index, int k_data) {
    std::vector<std::uint8_t> row(static_cast<std::size_t>(k_data), 0);
    if (index < k_data) {
        row[static_cast<std::size_t>(index)] = 1;
    } else {
        for (int j = 0; j < k_data; ++j)
            row[static_cast<std::size_t>(j)] = cauchy_entry(index - k_data, j, k_data);
    }
    return row;
}

/// Gauss-Jordan inversion over GF(256); the gathered generator rows are
/// guaranteed nonsingular by the Cauchy structure.
std::vector<std::vector<std::uint8_t>> invert(std::vector<std::vector<std::uint8_t>> m) {
    using namespace gf256;
    const std::size_t n = m.size();
    std::vector<std::vector<std::uint8_t>> inv_m(n, std::vector<std::uint8_t>(n, 0));
    for (std::size_t i = 0; i < n; ++i) inv_m[i][i] = 1;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        while (pivot < n && m[pivot][col] == 0) ++pivot;
        if (pivot == n) throw std::logic_error("mds: singular decode matrix");
        std::swap(m[pivot], m[col]);
        std::swap(inv_m[pivot], inv_m[col]);
        const std::uint8_t scale = inv(m[col][col]);
        for (std::size_t j = 0; j < n; ++j) {
            m[col][j] = mul(m[col][j], scale);
            inv_m[col][j] = mul(inv_m[col][j], scale);
        }
        for (std::size_t row = 0; row < n; ++row) {
            if (row == col || m[row][col] == 0) continue;
            const std::uint8_t factor = m[row][col];
            for (std::size_t j = 0; j < n; ++j) {
                m[row][j] = add(m[row][j], mul(factor, m[col][j]));
                inv_m[row][j] = add(inv_m[row][j], mul(factor, inv_m[col][j]));
            }
        }
    }
    return inv_m;
}

}  // namespace

MdsBlockSet mds_encode_bytes(const Bytes& payload, std::int64_t total_bits, int k_data,
                             int n_total) {
    if (k_data < 1 || k_data > n_total)
        throw std::invalid_argument("mds_encode: need 1 <= L <= N_E");
    if (n_total > 255)
        throw std::invalid_argument("mds_encode: N_E exceeds the GF(256) code length limit of 255");

    const std::size_t block_bytes =
        (payload.size() + static_cast<std::size_t>(k_data) - 1) / static_cast<std::size_t>(k_data);
    Bytes padded = payload;
    padded.resize(block_bytes * static_cast<std::size_t>(k_data), 0);

    MdsBlockSet set;
    set.n_total = n_total;
    set.k_data = k_data;
    set.total_bits = total_bits;
    set.blocks.resize(static_cast<std::size_t>(n_total));
    for (int j = 0; j < k_data; ++j)
        set.blocks[static_cast<std::size_t>(j)] =
            Bytes(padded.begin() + static_cast<std::ptrdiff_t>(j * block_bytes),
                  padded.begin() + static_cast<std::ptrdiff_t>((j + 1) * block_bytes));
    for (int r = 0; r < n_total - k_data; ++r) {
        Bytes parity(block_bytes, 0);
        for (int j = 0; j < k_data; ++j) {
            const std::uint8_t coeff = cauchy_entry(r, j, k_data);
            const Bytes& data = set.blocks[static_cast<std::size_t>(j)];
            for (std::size_t s = 0; s < block_bytes; ++s)
                parity[s] = gf256::add(parity[s], gf256::mul(coeff, data[s]));
        }
        set.blocks[static_cast<std::size_t>(k_data + r)] = std::move(parity);
    }
    return set;
}

MdsBlockSet mds_encode(const MulticastCodeword& codeword, int k_data, int n_total) {
    return mds_encode_bytes(codeword.concatenated(), codeword.total_bits, k_data, n_total);
}

Bytes mds_decode(const std::vector<std::pair<int, Bytes>>& blocks, int k_data, int n_total,
                 std::int64_t total_bits) {
    if (static_cast<int>(blocks.size()) != k_data)
        throw std::invalid_argument("mds_decode: exactly L blocks required");
    std::vector<int> seen;
    for (const auto& [index, data] : blocks) {
        if (index < 0 || index >= n_total) throw std::invalid_argument("mds_decode: index out of range");
        if (std::find(seen.begin(), seen.end(), index) != seen.end())
            throw std::invalid_argument("mds_decode: duplicate block index");
        seen.push_back(index);
        if (data.size() != blocks.front().second.size())
            throw std::invalid_argument("mds_decode: block sizes differ");
    }

    std::vector<std::vector<std::uint8_t>> m;
    m.reserve(static_cast<std::size_t>(k_data));
    for (const auto& [index, data] : blocks) m.push_back(generator_row(index, k_data));
    const auto m_inv = invert(std::move(m));

    const std::size_t block_bytes = blocks.front().second.size();
    Bytes out(block_bytes * static_cast<std::size_t>(k_data), 0);
    for (int row = 0; row < k_data; ++row) {
        Bytes& dest_base = out;
        for (int col = 0; col < k_data; ++col) {
            const std::uint8_t coeff = m_inv[static_cast<std::size_t>(row)][static_cast<std::size_t>(col)];
            if (coeff == 0) continue;
            const Bytes& src = blocks[static_cast<std::size_t>(col)].second;
            const std::size_t base = static_cast<std::size_t>(row) * block_bytes;
            for (std::size_t s = 0; s < block_bytes; ++s)
                dest_base[base + s] = gf256::add(dest_base[base + s], gf256::mul(coeff, src[s]));
        }
    }
    const std::size_t payload_bytes = static_cast<std::size_t>((total_bits + 7) / 8);
    if (payload_bytes > out.size()) throw std::invalid_argument("mds_decode: total_bits too large");
    out.resize(payload_bytes);
    return out;
}

Bytes MdsBlockSet::serialize() const {
    Bytes wire;
    for (int i = 0; i < n_total; ++i) {
        const Bytes& block = blocks[static_cast<std::size_t>(i)];
        wire.push_back(static_cast<std::uint8_t>(i));
        const std::uint32_t len = static_cast<std::uint32_t>(block.size());
        wire.push_back(static_cast<std::uint8_t>(len >> 24));
        wire.push_back(static_cast<std::uint8_t>(len >> 16));
        wire.push_back(static_cast<std::uint8_t>(len >> 8));
        wire.push_back(static_cast<std::uint8_t>(len));
        wire.insert(wire.end(), block.begin(), block.end());
    }
    return wire;
}

MdsBlockSet MdsBlockSet::deserialize(const Bytes& wire, int k_data, std::int64_t total_bits) {
    MdsBlockSet set;
    set.k_data = k_data;
    set.total_bits = total_bits;
    std::size_t pos = 0;
    std::vector<std::pair<int, Bytes>> parsed;
    while (pos < wire.size()) {
        if (pos + 5 > wire.size()) throw std::invalid_argument("mds wire format: truncated frame");
        const int index = wire[pos];
        const std::uint32_t len = (static_cast<std::uint32_t>(wire[pos + 1]) << 24) |
                                  (static_cast<std::uint32_t>(wire[pos + 2]) << 16) |
                                  (static_cast<std::uint32_t>(wire[pos + 3]) << 8) |
                                  static_cast<std::uint32_t>(wire[pos + 4]);
        pos += 5;
        if (pos + len > wire.size()) throw std::invalid_argument("mds wire format: truncated payload");
        parsed.emplace_back(index, Bytes(wire.begin() + static_cast<std::ptrdiff_t>(pos),
                                         wire.begin() + static_cast<std::ptrdiff_t>(pos + len)));
        pos += len;
    }
    set.n_total = static_cast<int>(parsed.size());
    set.blocks.resize(parsed.size());
    for (auto& [index, data] : parsed) {
        if (index < 0 || index >= set.n_total)
            throw std::invalid_argument("mds wire format: block index out of range");
        set.blocks[static_cast<std::size_t>(index)] = std::move(data);
    }
    return set;
}

Bytes recover_file(int user, const MulticastCodeword& codeword,
                   const CacheAssignment& assignment, const std::vector<int>& demand) {
    if (user < 0 || user >= assignment.users)
        throw std::invalid_argument("recover_file: user index out of range");
    if (static_cast<int>(demand.size()) != assignment.users)
        throw std::invalid_argument("recover_file: demand length must equal K");
    const int wanted = demand[static_cast<std::size_t>(user)];

    Bytes file;
    for (const auto& subset : assignment.segment_subsets) {
        const bool in_cache = std::find(subset.begin(), subset.end(), user) != subset.end();
        if (in_cache) {
            const Bytes& seg = cached_segment(assignment, wanted, subset);
            file.insert(file.end(), seg.begin(), seg.end());
            continue;
        }
        // W_{d_user}^T from X_S with S = T + {user}: XOR out the t segments
        // this user holds for the other members of S.
        Subset s = subset;
        s.push_back(user);
        std::sort(s.begin(), s.end());
        const auto block_it = codeword.blocks.find(s);
        if (block_it == codeword.blocks.end())
            throw std::runtime_error("recover_file: multicast block missing (integrity error)");
        Bytes segment = block_it->second;
        for (int j : s) {
            if (j == user) continue;
            Subset rest;
            rest.reserve(s.size() - 1);
            for (int i : s)
                if (i != j) rest.push_back(i);
            xor_into(segment, cached_segment(assignment, demand[static_cast<std::size_t>(j)], rest));
        }
        file.insert(file.end(), segment.begin(), segment.end());
    }
    return file;
}

}  // namespace edgecast::caching
