#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

namespace edgecast::caching {

using Bytes = std::vector<std::uint8_t>;

/// A subset of user indices (0-based), kept sorted; std::map over these keys
/// iterates in exactly the canonical lexicographic subset order used for
/// block concatenation.
using Subset = std::vector<int>;

/// All size-k subsets of {0, ..., n-1} in lexicographic order.
std::vector<Subset> subsets_lex(int n, int k);

std::int64_t binomial(int n, int k);

/// Content library: N files of identical size.
class Library {
public:
    explicit Library(std::vector<Bytes> files);

    int file_count() const { return static_cast<int>(files_.size()); }
    std::int64_t file_bits() const { return static_cast<std::int64_t>(file_bytes_) * 8; }
    std::size_t file_bytes() const { return file_bytes_; }
    const Bytes& file(int i) const { return files_.at(static_cast<std::size_t>(i)); }

    /// Uniformly random library for demos and tests.
    static Library random(int n_files, std::size_t bytes_per_file, std::uint64_t seed);

private:
    std::vector<Bytes> files_;
    std::size_t file_bytes_ = 0;
};

/// Centralized placement: file i is split into C(K,t) segments indexed by the
/// t-subsets of users, and user k caches every segment whose subset contains k.
struct CacheAssignment {
    int users = 0;                        // K
    int t = 0;                            // cache parameter MK/N
    std::size_t segment_bytes = 0;        // file_bytes / C(K,t)
    std::vector<Subset> segment_subsets;  // the t-subsets, lex order

    /// segments[i][T] = W_i^T
    std::vector<std::map<Subset, Bytes>> segments;

    /// per_user[k] = list of (file index, subset) pairs cached by user k.
    std::vector<std::vector<std::pair<int, Subset>>> per_user;

    std::int64_t cached_bits_per_user() const;
};

/// One delivery codeword: the lexicographically ordered XOR blocks X_S over
/// all (t+1)-subsets S, plus the total payload size in bits.
struct MulticastCodeword {
    std::map<Subset, Bytes> blocks;
    std::int64_t total_bits = 0;

    /// Blocks concatenated in lex subset order (the wire representation).
    Bytes concatenated() const;
};

/// Systematic MDS block set: the first k_data blocks are the split codeword,
/// the rest are GF(256) Reed-Solomon-style parities; any k_data blocks decode.
struct MdsBlockSet {
    int n_total = 0;             // N_E
    int k_data = 0;              // L
    std::int64_t total_bits = 0; // true codeword length before padding
    std::vector<Bytes> blocks;   // n_total blocks of equal size
    std::string field_spec = "GF(256), poly 0x11d, diagonal-scaled Cauchy parities";

    /// Wire framing: per block (index: 1 byte, length: 4-byte big-endian,
    /// payload), blocks in index order.
    Bytes serialize() const;
    static MdsBlockSet deserialize(const Bytes& wire, int k_data, std::int64_t total_bits);
};

/// t = MK/N must be an integer in [1, K] (memory sharing is out of scope) and
/// the file size in bytes must divide evenly into C(K,t) segments.
CacheAssignment place_caches(int users, int n_files, int cache_files, const Library& library);

/// X_S = XOR_{k in S} W_{d_k}^{S \ {k}} for every (t+1)-subset S, in lex order.
MulticastCodeword build_multicast_codeword(const std::vector<int>& demand,
                                           const CacheAssignment& assignment,
                                           const Library& library);

/// Exact transmission length F K (1 - mu) / (1 + K mu) with mu = mu_num/mu_den,
/// by integer arithmetic; throws if the parameters are inconsistent (non-integer
/// t = K mu or a non-integral result).
std::int64_t codeword_length_bits(int users, std::int64_t mu_num, std::int64_t mu_den,
                                  std::int64_t file_bits);

/// Systematic [n_total, k_data] MDS encoding over GF(256). The codeword is
/// zero-padded to k_data * ceil(bytes / k_data) bytes and split into
/// consecutive chunks; parity row 0 is the plain XOR of the data blocks.
MdsBlockSet mds_encode(const MulticastCodeword& codeword, int k_data, int n_total);
MdsBlockSet mds_encode_bytes(const Bytes& payload, std::int64_t total_bits, int k_data,
                             int n_total);

/// Reconstructs the original codeword payload from exactly k_data distinct
/// blocks (index, bytes), stripping the padding via total_bits.
Bytes mds_decode(const std::vector<std::pair<int, Bytes>>& blocks, int k_data, int n_total,
                 std::int64_t total_bits);

/// User k peels its cached segments out of each block X_S with k in S and
/// reassembles the requested file bit-exactly.
Bytes recover_file(int user, const MulticastCodeword& codeword,
                   const CacheAssignment& assignment, const std::vector<int>& demand);

}  // namespace edgecast::caching
