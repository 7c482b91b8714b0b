#include "botdna/dna.hpp"

#include <zlib.h>

#include <string>

#include "botdna/errors.hpp"
#include "botdna/io_utils.hpp"

namespace botdna {

char Alphabet::base_for(InteractionKind kind) const {
    switch (kind) {
        case InteractionKind::tweet: return tweet;
        case InteractionKind::reply: return reply;
        case InteractionKind::retweet: return retweet;
    }
    return tweet;
}

void Alphabet::validate() const {
    if (tweet == reply || tweet == retweet || reply == retweet)
        throw Error("alphabet bases must be pairwise distinct");
}

std::size_t deflate_size(std::string_view data) {
    z_stream strm{};
    if (deflateInit2(&strm, Z_BEST_COMPRESSION, Z_DEFLATED, -15, 8,
                     Z_DEFAULT_STRATEGY) != Z_OK)
        throw Error("deflate initialization failed");
    std::string out;
    out.resize(deflateBound(&strm, static_cast<uLong>(data.size())));
    strm.next_in = reinterpret_cast<Bytef*>(const_cast<char*>(data.data()));
    strm.avail_in = static_cast<uInt>(data.size());
    strm.next_out = reinterpret_cast<Bytef*>(out.data());
    strm.avail_out = static_cast<uInt>(out.size());
    int rc = deflate(&strm, Z_FINISH);
    std::size_t size = strm.total_out;
    deflateEnd(&strm);
    if (rc != Z_STREAM_END) throw Error("deflate did not finish");
    return size;
}

std::string encode_kinds(const std::vector<InteractionKind>& kinds,
                         const Alphabet& alphabet) {
    alphabet.validate();
    std::string seq;
    seq.reserve(kinds.size());
    for (InteractionKind k : kinds) seq.push_back(alphabet.base_for(k));
    return seq;
}

DnaSequence encode_timeline(const Timeline& timeline, const Alphabet& alphabet) {
    alphabet.validate();
    if (timeline.tweets.empty())
        throw Error("account " + timeline.account_id + " has no timeline");
    DnaSequence dna;
    dna.account_id = timeline.account_id;
    dna.sequence.reserve(timeline.tweets.size());
    for (const TweetRecord& t : timeline.tweets)
        dna.sequence.push_back(alphabet.base_for(t.kind));
    return dna;
}

CompressionStats compress_stats(const DnaSequence& dna) {
    if (dna.sequence.empty())
        throw Error("cannot compress an empty sequence");
    CompressionStats stats;
    stats.original_size = dna.sequence.size();
    stats.compressed_size = deflate_size(dna.sequence);
    stats.ratio = static_cast<double>(stats.original_size) /
                  static_cast<double>(stats.compressed_size);
    return stats;
}

std::string_view to_string(FeatureSet set) {
    switch (set) {
        case FeatureSet::A: return "A";
        case FeatureSet::B: return "B";
        case FeatureSet::C: return "C";
        case FeatureSet::D: return "D";
        case FeatureSet::light: return "light";
    }
    return "A";
}

FeatureSet feature_set_from_string(std::string_view s) {
    if (s == "A") return FeatureSet::A;
    if (s == "B") return FeatureSet::B;
    if (s == "C") return FeatureSet::C;
    if (s == "D") return FeatureSet::D;
    if (s == "light" || s == "Light") return FeatureSet::light;
    throw Error("unknown feature set '" + std::string(s) + "'");
}

std::vector<double> dna_feature_vector(const CompressionStats& stats,
                                       FeatureSet set) {
    double original = static_cast<double>(stats.original_size);
    double compressed = static_cast<double>(stats.compressed_size);
    switch (set) {
        case FeatureSet::A: return {original, compressed};
        case FeatureSet::B: return {original, stats.ratio};
        case FeatureSet::C: return {compressed, stats.ratio};
        case FeatureSet::D: return {original, compressed, stats.ratio};
        case FeatureSet::light: break;
    }
    throw Error("feature set 'light' is not derived from compression stats");
}

void write_compression_csv(const std::vector<AccountCompression>& rows,
                           const std::filesystem::path& path) {
    std::string out = "account_id,label,original_size,compressed_size,ratio\n";
    for (const auto& row : rows) {
        out += row.account_id;
        out += ',';
        out += to_string(row.label);
        out += ',';
        out += std::to_string(row.stats.original_size);
        out += ',';
        out += std::to_string(row.stats.compressed_size);
        out += ',';
        out += format_double(row.stats.ratio);
        out += '\n';
    }
    atomic_write(path, out);
}

std::vector<AccountCompression> read_compression_csv(
    const std::filesystem::path& path) {
    std::vector<AccountCompression> rows;
    bool first = true;
    for_each_line(path, [&](const std::string& line) {
        if (line.empty()) return;
        if (first) {
            first = false;
            if (line.rfind("account_id,", 0) == 0) return;
        }
        auto fields = split_csv_line(line);
        if (fields.size() != 5)
            throw SchemaError("compression row needs 5 fields: " + line,
                              "account_id");
        AccountCompression row;
        row.account_id = fields[0];
        row.label = label_from_string(fields[1]);
        row.stats.original_size = std::stoull(fields[2]);
        row.stats.compressed_size = std::stoull(fields[3]);
        row.stats.ratio = std::stod(fields[4]);
        rows.push_back(std::move(row));
    });
    return rows;
}

}  // namespace botdna
