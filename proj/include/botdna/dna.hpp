#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "botdna/ingest.hpp"

namespace botdna {

// Base characters for the three interaction kinds.  The defaults spell the
// {A, C, T} alphabet; any mapping with pairwise distinct bases is allowed.
struct Alphabet {
    char tweet = 'A';
    char reply = 'C';
    char retweet = 'T';

    char base_for(InteractionKind kind) const;
    void validate() const;
};

// An account's interaction string, one base per tweet, oldest first.
struct DnaSequence {
    std::string account_id;
    std::string sequence;
};

struct CompressionStats {
    std::size_t original_size = 0;
    std::size_t compressed_size = 0;
    double ratio = 0.0;  // original_size / compressed_size
};

// Byte length of the raw RFC 1951 DEFLATE stream at maximum compression.
// No container header, so equal inputs give equal sizes everywhere.
std::size_t deflate_size(std::string_view data);

std::string encode_kinds(const std::vector<InteractionKind>& kinds,
                         const Alphabet& alphabet = {});

DnaSequence encode_timeline(const Timeline& timeline,
                            const Alphabet& alphabet = {});

CompressionStats compress_stats(const DnaSequence& dna);

// The compression-statistic feature sets plus the metadata set, as used to
// span the model grid.
enum class FeatureSet { A, B, C, D, light };

std::string_view to_string(FeatureSet set);
FeatureSet feature_set_from_string(std::string_view s);

// A = (original, compressed); B = (original, ratio); C = (compressed, ratio);
// D = (original, compressed, ratio).  FeatureSet::light is not a projection
// of compression stats and is rejected here.
std::vector<double> dna_feature_vector(const CompressionStats& stats,
                                       FeatureSet set);

struct AccountCompression {
    std::string account_id;
    Label label = Label::human;
    CompressionStats stats;
};

// CSV rows "account_id,label,original_size,compressed_size,ratio".
void write_compression_csv(const std::vector<AccountCompression>& rows,
                           const std::filesystem::path& path);
std::vector<AccountCompression> read_compression_csv(
    const std::filesystem::path& path);

}  // namespace botdna
