#include "kgiqa/retrieve.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "kgiqa/errors.hpp"

namespace kgiqa::retrieve {

namespace {

void keywords_from(std::string_view lower_word, text::CoarseTag tag,
                   std::vector<std::string>& out) {
    if (tag == text::CoarseTag::Other) return;
    if (text::is_stopword(lower_word)) return;
    std::string lem = text::lemma(lower_word);
    if (text::is_stopword(lem)) return;
    if (std::find(out.begin(), out.end(), lem) == out.end()) out.push_back(std::move(lem));
}

}  // namespace

double IdfTable::value(std::string_view term) const {
    const auto it = df.find(std::string(term));
    const std::size_t d = it == df.end() ? 0 : it->second;
    return std::log(static_cast<double>(doc_count + 1) / static_cast<double>(d + 1)) + 1.0;
}

std::vector<std::string> extract_keywords(std::string_view txt) {
    std::vector<std::string> out;
    for (const auto& tok : text::tokenize(txt)) {
        if (!tok.is_word) continue;
        const std::string lower = text::to_lower(tok.surface);
        keywords_from(lower, text::heuristic_tag(lower), out);
    }
    return out;
}

std::vector<std::string> extract_keywords(const std::vector<std::string>& tokens,
                                          const std::vector<text::CoarseTag>& tags) {
    if (tokens.size() != tags.size())
        throw ConfigError("extract_keywords: tokens and tags differ in length");
    std::vector<std::string> out;
    for (std::size_t i = 0; i < tokens.size(); ++i)
        keywords_from(text::to_lower(tokens[i]), tags[i], out);
    return out;
}

IdfTable compute_idf(const std::vector<QaInstance>& corpus) {
    if (corpus.empty()) throw DataError("compute_idf: idf undefined for an empty corpus");
    IdfTable table;
    table.doc_count = corpus.size();
    for (const auto& inst : corpus) {
        std::string doc = inst.context;
        doc += ' ';
        doc += inst.question;
        for (const auto& a : inst.answers) {
            doc += ' ';
            doc += a;
        }
        for (const auto& term : extract_keywords(doc)) ++table.df[term];
    }
    return table;
}

bool scored_before(const ScoredTuple& a, const ScoredTuple& b) {
    if (a.score != b.score) return a.score > b.score;
    if (a.tuple_id != b.tuple_id) return a.tuple_id < b.tuple_id;
    return a.query < b.query;
}

RankedTuples retrieve_tuples(const kgstore::GraphIndex& index,
                             const std::vector<std::string>& queries, const IdfTable& idf,
                             std::size_t k) {
    if (k < 1) throw ConfigError("retrieve_tuples: k must be >= 1");

    // Bounded selection: a k-sized heap with the worst candidate on top.
    const auto worse = [](const ScoredTuple& a, const ScoredTuple& b) {
        return scored_before(a, b);
    };
    std::vector<ScoredTuple> heap;
    heap.reserve(k + 1);
    for (const auto& q : queries) {
        const double qidf = idf.value(q);
        for (const std::uint32_t id : index.lookup(q)) {
            ScoredTuple cand{id, q, index.tuple(id).weight * qidf};
            if (heap.size() < k) {
                heap.push_back(std::move(cand));
                std::push_heap(heap.begin(), heap.end(), worse);
            } else if (scored_before(cand, heap.front())) {
                std::pop_heap(heap.begin(), heap.end(), worse);
                heap.back() = std::move(cand);
                std::push_heap(heap.begin(), heap.end(), worse);
            }
        }
    }
    std::sort(heap.begin(), heap.end(), scored_before);

    // The attention KB must not contain duplicate rows: keep the higher copy.
    RankedTuples out;
    out.items.reserve(heap.size());
    for (auto& st : heap) {
        const bool seen = std::any_of(out.items.begin(), out.items.end(),
                                      [&](const ScoredTuple& s) { return s.tuple_id == st.tuple_id; });
        if (!seen) out.items.push_back(std::move(st));
    }
    return out;
}

RankedTuples retrieve_for_candidate(const kgstore::GraphIndex& index, const QaInstance& inst,
                                    int candidate, const IdfTable& idf, std::size_t k) {
    if (candidate < 1 || candidate > 3)
        throw ConfigError("retrieve_for_candidate: candidate out of range");
    std::string joined = inst.context;
    joined += ' ';
    joined += inst.question;
    joined += ' ';
    joined += inst.answers[static_cast<std::size_t>(candidate - 1)];
    RankedTuples ranked = retrieve_tuples(index, extract_keywords(joined), idf, k);
    ranked.instance_id = inst.id;
    ranked.candidate = candidate;
    return ranked;
}

std::vector<QaInstance> load_qa_jsonl(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open QA file: " + path);
    std::vector<QaInstance> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object())
            throw DataError(path + ":" + std::to_string(lineno) + ": malformed record");
        QaInstance inst;
        inst.id = j.value("id", path + "#" + std::to_string(lineno));
        inst.context = j.value("context", "");
        inst.question = j.value("question", "");
        inst.answers[0] = j.value("answerA", "");
        inst.answers[1] = j.value("answerB", "");
        inst.answers[2] = j.value("answerC", "");
        out.push_back(std::move(inst));
    }
    return out;
}

void attach_labels(std::vector<QaInstance>& instances, const std::string& labels_path) {
    std::ifstream in(labels_path);
    if (!in) throw DataError("cannot open labels file: " + labels_path);
    std::size_t i = 0;
    int label = 0;
    while (in >> label) {
        if (i >= instances.size()) throw DataError("labels file longer than QA file");
        if (label < 1 || label > 3)
            throw DataError("label out of range {1,2,3} at line " + std::to_string(i + 1));
        instances[i++].label = label;
    }
    if (i != instances.size()) throw DataError("labels file shorter than QA file");
}

void save_cache(std::ostream& out, const CacheHeader& header,
                const std::vector<RankedTuples>& records) {
    nlohmann::json h;
    h["k"] = header.k;
    h["variant"] = header.variant;
    h["config_hash"] = header.config_hash;
    out << h.dump() << '\n';
    for (const auto& r : records) {
        nlohmann::json j;
        j["instance_id"] = r.instance_id;
        j["candidate"] = r.candidate;
        auto items = nlohmann::json::array();
        for (const auto& s : r.items)
            items.push_back(nlohmann::json::array({s.tuple_id, s.query, s.score}));
        j["items"] = std::move(items);
        out << j.dump() << '\n';
    }
    if (!out) throw DataError("cache write failure");
}

std::vector<RankedTuples> load_cache(std::istream& in, CacheHeader* header) {
    std::string line;
    if (!std::getline(in, line)) throw DataError("cache: missing header line");
    const auto h = nlohmann::json::parse(line, nullptr, false);
    if (h.is_discarded() || !h.contains("k") || !h.contains("variant"))
        throw DataError("cache: malformed header");
    if (header) {
        header->k = h["k"].get<std::size_t>();
        header->variant = h["variant"].get<std::string>();
        header->config_hash = h.value("config_hash", std::uint64_t{0});
    }
    std::vector<RankedTuples> out;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = nlohmann::json::parse(line, nullptr, false);
        if (j.is_discarded()) throw DataError("cache: malformed record");
        RankedTuples r;
        r.instance_id = j["instance_id"].get<std::string>();
        r.candidate = j["candidate"].get<int>();
        for (const auto& item : j["items"]) {
            r.items.push_back({item[0].get<std::uint32_t>(), item[1].get<std::string>(),
                               item[2].get<double>()});
        }
        out.push_back(std::move(r));
    }
    return out;
}

}  // namespace kgiqa::retrieve
