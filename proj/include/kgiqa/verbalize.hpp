#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "kgiqa/kgstore.hpp"

namespace kgiqa::verbalize {

// ---------------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------------

// Relation label -> template with one {head} and one {tail} slot. Unknown
// relations fall back to "head, camel-split relation, tail.".
class TemplateTable {
public:
    static TemplateTable builtin();
    // One line per relation: RelationLabel<TAB>template
    static TemplateTable load(std::istream& in);

    void set(std::string relation, std::string tmpl);
    const std::string* find(std::string_view relation) const;
    std::size_t size() const { return templates_.size(); }

private:
    std::map<std::string, std::string, std::less<>> templates_;
};

struct VerbalizedTuple {
    std::uint32_t tuple_id = 0;
    std::string txt;
    // half-open character spans of the head and tail surfaces in txt
    std::size_t head_begin = 0, head_end = 0;
    std::size_t tail_begin = 0, tail_end = 0;
};

VerbalizedTuple verbalize_tuple(const kgstore::KgTuple& t, const TemplateTable& templates);

// ---------------------------------------------------------------------------
// ATOMIC verbalization
// ---------------------------------------------------------------------------

// 20 frequent surnames; PersonX/PersonY assignment rotates deterministically.
const std::vector<std::string>& default_surnames();

// PersonX/PersonY -> two distinct surnames picked from (seed, event text);
// blanks ("_" runs) -> "something"; relation-specific connective appended.
std::string verbalize_atomic(const kgstore::AtomicEvent& e,
                             const std::vector<std::string>& names, std::uint64_t seed);

// ---------------------------------------------------------------------------
// Vocabulary and masking
// ---------------------------------------------------------------------------

// Closed word-level vocabulary with reserved special tokens.
class Vocab {
public:
    static constexpr std::uint32_t kPad = 0;
    static constexpr std::uint32_t kUnk = 1;
    static constexpr std::uint32_t kCls = 2;
    static constexpr std::uint32_t kSep = 3;
    static constexpr std::uint32_t kMask = 4;
    static constexpr std::uint32_t kFirstRegular = 5;

    Vocab();
    static Vocab build(const std::vector<std::string>& texts);

    std::uint32_t add(std::string_view token);          // idempotent
    std::uint32_t id(std::string_view token) const;     // kUnk when absent
    const std::string& token(std::uint32_t id) const;
    std::size_t size() const { return tokens_.size(); }
    static bool is_special(std::uint32_t id) { return id < kFirstRegular; }

    // Lowercased word/punctuation ids, no specials added.
    std::vector<std::uint32_t> encode(std::string_view txt) const;

    void save(std::ostream& out) const;
    static Vocab load(std::istream& in);

private:
    std::vector<std::string> tokens_;
    std::unordered_map<std::string, std::uint32_t> ids_;
};

struct MaskedExample {
    std::vector<std::uint32_t> tokens;        // sequence after masking
    std::vector<std::size_t> mask_positions;  // strictly increasing
    std::vector<std::uint32_t> labels;        // original ids at mask positions
    std::string meta;                         // "kg-pretrain" | "task-mlm"
};

struct CorpusStats {
    std::size_t head_masked = 0;
    std::size_t tail_masked = 0;
    std::size_t misaligned_spans = 0;
};

// Wraps each text as [CLS] tokens [SEP], flips a seeded fair coin per tuple
// and masks every token overlapping the chosen entity span.
std::vector<MaskedExample> build_kg_pretrain_corpus(const std::vector<VerbalizedTuple>& texts,
                                                    const Vocab& vocab, std::uint64_t seed,
                                                    CorpusStats* stats = nullptr);

// Independent Bernoulli(rate) selection over non-special positions with the
// 80/10/10 mask/random/keep treatment.
MaskedExample mask_tokens(const std::vector<std::uint32_t>& tokens, double rate,
                          std::uint64_t rng_seed, const Vocab& vocab);

// --- corpus file -------------------------------------------------------------

void save_corpus(std::ostream& out, const std::vector<MaskedExample>& examples,
                 const std::vector<std::string>& texts);
std::vector<MaskedExample> load_corpus(std::istream& in);

}  // namespace kgiqa::verbalize
