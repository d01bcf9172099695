#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgiqa/kgstore.hpp"
#include "kgiqa/text.hpp"

namespace kgiqa::retrieve {

// One multiple-choice item: context C, question Q, answers A1..A3.
struct QaInstance {
    std::string id;
    std::string context;
    std::string question;
    std::array<std::string, 3> answers;
    int label = 0;  // 1..3, 0 when unlabeled
};

struct IdfTable {
    std::size_t doc_count = 0;
    std::unordered_map<std::string, std::size_t> df;

    // Smoothed idf: ln((N+1)/(df+1)) + 1; unseen terms resolve with df = 0.
    double value(std::string_view term) const;
};

struct ScoredTuple {
    std::uint32_t tuple_id = 0;
    std::string query;  // lemma that retrieved the tuple
    double score = 0.0;
};

// Per-candidate top-k retrieved tuples, scores nonincreasing.
struct RankedTuples {
    std::string instance_id;
    int candidate = 1;  // 1..3
    std::vector<ScoredTuple> items;
};

// Lemmas of noun/verb/adjective tokens, lowercased, stopwords excluded,
// order-preserving and deduplicated. The overload with tags accepts
// externally supplied coarse tags; the plain one uses the fallback tagger.
std::vector<std::string> extract_keywords(std::string_view txt);
std::vector<std::string> extract_keywords(const std::vector<std::string>& tokens,
                                          const std::vector<text::CoarseTag>& tags);

// One document per instance: the concatenation of C, Q, A1..A3.
IdfTable compute_idf(const std::vector<QaInstance>& corpus);

// Orders (tuple, query) pairs by score desc, tuple id asc, query lemma asc.
bool scored_before(const ScoredTuple& a, const ScoredTuple& b);

// One-hop gather, weight x idf scoring, deterministic top-k, then dedup by
// tuple id keeping the higher-scored copy.
RankedTuples retrieve_tuples(const kgstore::GraphIndex& index,
                             const std::vector<std::string>& queries, const IdfTable& idf,
                             std::size_t k);

RankedTuples retrieve_for_candidate(const kgstore::GraphIndex& index, const QaInstance& inst,
                                    int candidate, const IdfTable& idf, std::size_t k);

// --- file formats -----------------------------------------------------------

// Line-delimited records with fields context, question, answerA/B/C; labels
// arrive in a parallel file of integers 1..3.
std::vector<QaInstance> load_qa_jsonl(const std::string& path);
void attach_labels(std::vector<QaInstance>& instances, const std::string& labels_path);

struct CacheHeader {
    std::size_t k = 0;
    std::string variant;
    std::uint64_t config_hash = 0;
};

void save_cache(std::ostream& out, const CacheHeader& header,
                const std::vector<RankedTuples>& records);
std::vector<RankedTuples> load_cache(std::istream& in, CacheHeader* header);

}  // namespace kgiqa::retrieve
