#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kgiqa::kgstore {

// One directed, weighted, typed edge from a ConceptNet-style dump.
struct KgTuple {
    std::uint32_t id = 0;  // load ordinal
    std::string head;      // normalized concept (lowercase, spaces)
    std::string relation;  // e.g. "HasContext"
    std::string tail;
    double weight = 0.0;   // >= 0, clamped at parse time
};

// The nine ATOMIC if-then relation types.
enum class AtomicRelation : std::uint8_t {
    oEffect,
    oReact,
    oWant,
    xAttr,
    xEffect,
    xIntent,
    xNeed,
    xReact,
    xWant,
};

std::string_view to_string(AtomicRelation r);
std::optional<AtomicRelation> atomic_relation_from(std::string_view name);

struct AtomicEvent {
    std::string event;  // raw event text, may contain PersonX/PersonY/blanks
    AtomicRelation relation_type = AtomicRelation::oEffect;
    std::string tail;
};

struct ParseStats {
    std::size_t lines = 0;
    std::size_t tuples = 0;
    std::size_t skipped_language = 0;
    std::size_t skipped_malformed = 0;
    std::size_t missing_weight = 0;
    std::size_t blocked_relation = 0;
};

struct RelationBlocklist {
    std::vector<std::string> exact = {"ExternalURL"};
    std::vector<std::string> prefixes = {"dbpedia/"};
    bool blocked(std::string_view relation) const;
};

// Strips /c/<lang>/ URI scaffolding and part-of-speech suffixes, decodes
// percent escapes, maps underscores to spaces, lowercases.
std::string normalize_concept(std::string_view uri_or_term);

// Tab-separated assertion lines: URI, relation URI, start URI, end URI,
// JSON metadata with a numeric "weight". Lines whose start or end is not in
// the requested language are skipped silently; malformed lines are skipped
// with a counted warning.
std::vector<KgTuple> parse_conceptnet_dump(std::istream& in, std::string_view language,
                                           const RelationBlocklist& blocklist,
                                           ParseStats* stats = nullptr);

// Delimited table with a header row naming the event column and the nine
// relation columns; cells hold bracketed string lists. "none" entries are
// dropped; an unknown relation column is a fatal schema error.
std::vector<AtomicEvent> parse_atomic_dump(std::istream& in, ParseStats* stats = nullptr);

// Lemma keys a concept contributes to the index: one per content-word lemma,
// falling back to the whole normalized form when every word is a stopword.
std::vector<std::string> concept_index_keys(std::string_view concept);

// Immutable lemma-keyed adjacency over tuples; one-hop lookup only.
class GraphIndex {
public:
    GraphIndex() = default;
    static GraphIndex build(std::vector<KgTuple> tuples);

    const std::vector<KgTuple>& tuples() const { return tuples_; }
    const KgTuple& tuple(std::uint32_t id) const { return tuples_[id]; }

    // Tuple ids incident to the lemma; empty when the lemma names no node.
    const std::vector<std::uint32_t>& lookup(std::string_view lemma) const;

    const std::map<std::string, std::vector<std::uint32_t>>& by_lemma() const {
        return by_lemma_;
    }

    // Versioned binary round-trip; the lemma index is rebuilt on load.
    void save(std::ostream& out) const;
    static GraphIndex load(std::istream& in);

private:
    std::vector<KgTuple> tuples_;
    std::map<std::string, std::vector<std::uint32_t>> by_lemma_;
};

}  // namespace kgiqa::kgstore
