// Copyright 2026 The Fast-Forward Authors
// SPDX-License-Identifier: Apache-2.0

#include "fastforward/forward.hpp"

#include <algorithm>
#include <limits>
#include <unordered_set>

#include <json.hpp>

#include "binary_io.hpp"
#include "numbers.hpp"

namespace ff {

namespace {

constexpr std::uint64_t kHeaderBytes = 4 + 4 + 1 + 4 + 8;

}  // namespace

std::vector<DenseVector> PassageView::to_vectors() const {
    std::vector<DenseVector> out;
    out.reserve(size());
    for (std::size_t i = 0; i < size(); ++i) {
        auto p = (*this)[i];
        out.emplace_back(std::vector<float>(p.begin(), p.end()));
    }
    return out;
}

ForwardIndex ForwardIndex::build(std::vector<Entry> entries) {
    if (entries.empty()) throw InvalidArgument("cannot build a forward index without documents");
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) { return a.id < b.id; });

    ForwardIndex index;
    for (const auto& e : entries) {
        if (e.passages.empty()) throw InvalidArgument("document '" + e.id.str() + "' has no passage vectors");
        if (index.dim_ == 0) index.dim_ = e.passages.front().dim();
        if (index.dim_ == 0) throw InvalidArgument("vectors must have dimension >= 1");
        if (index.dim_ > std::numeric_limits<std::uint32_t>::max()) throw InvalidArgument("dimension too large");
        for (const auto& v : e.passages) {
            if (v.dim() != index.dim_) throw DimensionMismatch(index.dim_, v.dim());
        }
    }

    std::size_t total = 0;
    for (const auto& e : entries) total += e.passages.size();
    index.data_.reserve(total * index.dim_);
    index.ids_.reserve(entries.size());
    index.first_.reserve(entries.size() + 1);
    index.offsets_.reserve(entries.size());
    index.slots_.reserve(entries.size());

    std::uint64_t offset = kHeaderBytes;
    for (auto& e : entries) {
        const auto slot = static_cast<std::uint32_t>(index.ids_.size());
        if (!index.slots_.emplace(e.id.str(), slot).second) {
            throw InvalidArgument("duplicate document id '" + e.id.str() + "'");
        }
        if (e.id.str().size() > 0xFFFF) throw InvalidArgument("document id longer than 65535 bytes");
        index.first_.push_back(index.data_.size() / index.dim_);
        index.offsets_.push_back(offset);
        for (const auto& v : e.passages) index.data_.insert(index.data_.end(), v.values().begin(), v.values().end());
        offset += 2 + e.id.str().size() + 4 + 4ULL * e.passages.size() * index.dim_;
        index.ids_.push_back(std::move(e.id));
    }
    index.first_.push_back(index.data_.size() / index.dim_);
    return index;
}

PassageView ForwardIndex::passages_at(std::size_t slot) const {
    const auto begin = first_.at(slot) * dim_;
    const auto end = first_.at(slot + 1) * dim_;
    return PassageView(std::span<const float>(data_).subspan(begin, end - begin), dim_);
}

std::optional<PassageView> ForwardIndex::find(const DocId& doc) const {
    auto it = slots_.find(doc.str());
    if (it == slots_.end()) return std::nullopt;
    return passages_at(it->second);
}

PassageView ForwardIndex::lookup(const DocId& doc) const {
    auto it = slots_.find(doc.str());
    if (it == slots_.end()) throw MissingDocument(doc.str());
    return passages_at(it->second);
}

std::uint64_t ForwardIndex::byte_offset(const DocId& doc) const {
    auto it = slots_.find(doc.str());
    if (it == slots_.end()) throw MissingDocument(doc.str());
    return offsets_[it->second];
}

void ForwardIndex::check_query(std::span<const float> query) const {
    if (query.size() != dim_) throw DimensionMismatch(dim_, query.size());
}

double ForwardIndex::dense_score(std::span<const float> query, const DocId& doc) const {
    check_query(query);
    const auto passages = lookup(doc);
    double best = -std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < passages.size(); ++i) best = std::max(best, static_cast<double>(dot(query, passages[i])));
    return best;
}

RankedList ForwardIndex::dense_topk(std::span<const float> query, std::size_t k_d) const {
    check_query(query);
    if (k_d == 0) throw InvalidArgument("k_D must be >= 1");
    std::vector<double> scores(doc_count());
    for (std::size_t slot = 0; slot < doc_count(); ++slot) {
        const auto passages = passages_at(slot);
        double best = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < passages.size(); ++i) best = std::max(best, static_cast<double>(dot(query, passages[i])));
        scores[slot] = best;
    }
    // Slots follow DocId order, so slot order is the tie-break.
    std::vector<std::uint32_t> order(doc_count());
    for (std::uint32_t i = 0; i < order.size(); ++i) order[i] = i;
    const auto k = std::min(k_d, order.size());
    std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(k), order.end(),
                      [&](std::uint32_t a, std::uint32_t b) {
                          if (scores[a] != scores[b]) return scores[a] > scores[b];
                          return a < b;
                      });
    std::vector<ScoredDoc> hits;
    hits.reserve(k);
    for (std::size_t i = 0; i < k; ++i) hits.push_back({ids_[order[i]], scores[order[i]]});
    return RankedList(std::move(hits));
}

std::string ForwardIndex::serialize() const {
    detail::ByteWriter w;
    w.put_header(detail::SectionTag::forward);
    w.put(static_cast<std::uint32_t>(dim_));
    w.put(static_cast<std::uint64_t>(ids_.size()));
    for (std::size_t slot = 0; slot < ids_.size(); ++slot) {
        const auto passages = passages_at(slot);
        w.put_short_string(ids_[slot].str());
        w.put(static_cast<std::uint32_t>(passages.size()));
        for (float v : passages.data()) w.put_f32(v);
    }
    const auto table_offset = static_cast<std::uint64_t>(w.size());
    for (std::size_t slot = 0; slot < ids_.size(); ++slot) {
        w.put_short_string(ids_[slot].str());
        w.put(offsets_[slot]);
    }
    w.put(table_offset);
    return w.release();
}

ForwardIndex ForwardIndex::deserialize(std::string_view bytes) {
    detail::ByteReader r(bytes);
    r.expect_header(detail::SectionTag::forward);
    const auto dim = r.get<std::uint32_t>();
    const auto count = r.get<std::uint64_t>();
    if (dim == 0) throw FormatError("forward index dimension is zero");
    if (count == 0) throw FormatError("forward index has no documents");
    if (bytes.size() < kHeaderBytes + 8) throw FormatError("truncated file");

    detail::ByteReader tail(bytes);
    tail.seek(bytes.size() - 8);
    const auto table_offset = tail.get<std::uint64_t>();
    if (table_offset < kHeaderBytes || table_offset > bytes.size() - 8) throw FormatError("bad offset table position");
    if (count > (bytes.size() - 8 - table_offset) / 11) throw FormatError("document count exceeds offset table");

    // Records are read through the offset table and must tile the data
    // region exactly.
    std::vector<Entry> entries;
    entries.reserve(count);
    detail::ByteReader table(bytes.substr(0, bytes.size() - 8));
    table.seek(table_offset);
    std::uint64_t expected = kHeaderBytes;
    for (std::uint64_t i = 0; i < count; ++i) {
        auto id = table.get_short_string();
        const auto offset = table.get<std::uint64_t>();
        if (offset != expected) throw FormatError("offset table does not match record layout for '" + id + "'");
        detail::ByteReader rec(bytes.substr(0, table_offset));
        rec.seek(offset);
        if (rec.get_short_string() != id) throw FormatError("offset table id mismatch for '" + id + "'");
        const auto passages = rec.get<std::uint32_t>();
        if (passages == 0) throw FormatError("document '" + id + "' has no passages");
        if (static_cast<std::uint64_t>(passages) * dim > rec.remaining() / 4) throw FormatError("truncated file");
        if (!is_valid_doc_id(id)) throw FormatError("invalid document id in forward index");
        Entry e{DocId(std::move(id)), {}};
        e.passages.reserve(passages);
        for (std::uint32_t p = 0; p < passages; ++p) {
            std::vector<float> v(dim);
            for (auto& x : v) x = rec.get_f32();
            try {
                e.passages.emplace_back(std::move(v));
            } catch (const InvalidArgument&) {
                throw FormatError("non-finite vector component in '" + e.id.str() + "'");
            }
        }
        expected = rec.position();
        entries.push_back(std::move(e));
    }
    if (expected != table_offset) throw FormatError("unreferenced bytes before offset table");
    if (table.remaining() != 0) throw FormatError("trailing bytes in offset table");

    try {
        return build(std::move(entries));
    } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
    }
}

void ForwardIndex::save(const std::string& path) const { detail::write_file(path, serialize()); }

ForwardIndex ForwardIndex::load(const std::string& path) { return deserialize(detail::read_file(path)); }

std::string ForwardIndex::to_interchange() const {
    std::string out;
    for (std::size_t slot = 0; slot < ids_.size(); ++slot) {
        out += R"({"id": )";
        out += nlohmann::json(ids_[slot].str()).dump();
        out += R"(, "passages": [)";
        const auto passages = passages_at(slot);
        for (std::size_t p = 0; p < passages.size(); ++p) {
            if (p) out += ", ";
            out += '[';
            const auto v = passages[p];
            for (std::size_t i = 0; i < v.size(); ++i) {
                if (i) out += ", ";
                out += detail::shortest(v[i]);
            }
            out += ']';
        }
        out += "]}\n";
    }
    return out;
}

namespace {

/// SAX handler for one interchange line. Numbers are parsed from their source
/// text straight into float, so shortest-form output round-trips exactly.
class InterchangeLine : public nlohmann::json_sax<nlohmann::json> {
public:
    enum class Where { top, object, passages, passage, done };

    std::optional<std::string> id;
    std::vector<std::vector<float>> passages;
    bool have_passages = false;
    std::string error;

    bool null() override { return fail("unexpected null"); }
    bool boolean(bool) override { return fail("unexpected boolean"); }
    bool number_integer(number_integer_t v) override { return number(static_cast<float>(v)); }
    bool number_unsigned(number_unsigned_t v) override { return number(static_cast<float>(v)); }
    bool number_float(number_float_t, const string_t& s) override {
        auto v = detail::parse_number<float>(s);
        if (!v) return fail("number '" + s + "' is not a finite 32-bit float");
        return number(*v);
    }
    bool string(string_t& s) override {
        if (where_ != Where::object || key_ != "id") return fail("unexpected string");
        id = s;
        key_.clear();
        return true;
    }
    bool binary(binary_t&) override { return fail("unexpected binary value"); }
    bool start_object(std::size_t) override {
        if (where_ != Where::top) return fail("unexpected object");
        where_ = Where::object;
        return true;
    }
    bool key(string_t& k) override {
        if (k == "id" && !id) {
            key_ = k;
            return true;
        }
        if (k == "passages" && !have_passages) {
            key_ = k;
            return true;
        }
        return fail("unexpected or repeated key '" + k + "'");
    }
    bool end_object() override {
        where_ = Where::done;
        return true;
    }
    bool start_array(std::size_t) override {
        if (where_ == Where::object && key_ == "passages") {
            where_ = Where::passages;
            have_passages = true;
            key_.clear();
            return true;
        }
        if (where_ == Where::passages) {
            where_ = Where::passage;
            passages.emplace_back();
            return true;
        }
        return fail("unexpected array");
    }
    bool end_array() override {
        where_ = where_ == Where::passage ? Where::passages : Where::object;
        return true;
    }
    bool parse_error(std::size_t, const std::string&, const nlohmann::detail::exception& ex) override {
        return fail(ex.what());
    }

private:
    bool number(float v) {
        if (where_ != Where::passage) return fail("unexpected number");
        passages.back().push_back(v);
        return true;
    }
    bool fail(std::string msg) {
        if (error.empty()) error = std::move(msg);
        return false;
    }

    Where where_ = Where::top;
    std::string key_;
};

}  // namespace

ForwardIndex ForwardIndex::from_interchange(std::string_view jsonl) {
    std::vector<Entry> entries;
    std::unordered_set<std::string> seen;
    std::size_t dim = 0;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < jsonl.size()) {
        auto nl = jsonl.find('\n', pos);
        if (nl == std::string_view::npos) nl = jsonl.size();
        const auto line = detail::trim(jsonl.substr(pos, nl - pos));
        pos = nl + 1;
        ++line_no;
        if (line.empty()) continue;

        const auto where = "line " + std::to_string(line_no) + ": ";
        InterchangeLine sax;
        if (!nlohmann::json::sax_parse(line.begin(), line.end(), &sax) || !sax.error.empty()) {
            throw FormatError(where + (sax.error.empty() ? "malformed JSON" : sax.error));
        }
        if (!sax.id) throw FormatError(where + "missing \"id\"");
        if (!sax.have_passages) throw FormatError(where + "missing \"passages\"");
        if (!is_valid_doc_id(*sax.id)) throw FormatError(where + "invalid document id '" + *sax.id + "'");
        if (sax.passages.empty()) throw FormatError(where + "document '" + *sax.id + "' has no passages");
        if (!seen.insert(*sax.id).second) throw FormatError(where + "duplicate document id '" + *sax.id + "'");
        Entry e{DocId(*sax.id), {}};
        for (auto& p : sax.passages) {
            if (p.empty()) throw FormatError(where + "empty passage vector");
            if (dim == 0) dim = p.size();
            if (p.size() != dim) {
                throw FormatError(where + "dimension " + std::to_string(p.size()) + " differs from " +
                                  std::to_string(dim));
            }
            e.passages.emplace_back(std::move(p));
        }
        entries.push_back(std::move(e));
    }
    try {
        return build(std::move(entries));
    } catch (const InvalidArgument& e) {
        throw FormatError(e.what());
    } catch (const DimensionMismatch& e) {
        throw FormatError(e.what());
    }
}

void ForwardIndex::save_interchange(const std::string& path) const { detail::write_file(path, to_interchange()); }

ForwardIndex ForwardIndex::load_interchange(const std::string& path) {
    return from_interchange(detail::read_file(path));
}

std::vector<std::string> split_passages(std::string_view text, std::size_t window, std::size_t stride) {
    if (window == 0 || stride == 0) throw InvalidArgument("passage window and stride must be >= 1");
    const auto tokens = tokenize(text);
    std::vector<std::string> out;
    for (std::size_t start = 0; start < tokens.size(); start += stride) {
        const auto end = std::min(start + window, tokens.size());
        std::string passage;
        for (std::size_t i = start; i < end; ++i) {
            if (i > start) passage += ' ';
            passage += tokens[i];
        }
        out.push_back(std::move(passage));
        if (end == tokens.size()) break;
    }
    if (out.empty()) out.emplace_back();
    return out;
}

ForwardIndex encode_corpus_toy(std::span<const Document> corpus, std::size_t dim, std::uint64_t seed,
                               std::size_t window, std::size_t stride) {
    std::vector<ForwardIndex::Entry> entries;
    entries.reserve(corpus.size());
    for (const auto& doc : corpus) {
        ForwardIndex::Entry e{doc.id, {}};
        for (const auto& passage : split_passages(doc.text, window, stride)) {
            e.passages.push_back(toy_encode(passage, dim, seed));
        }
        entries.push_back(std::move(e));
    }
    return ForwardIndex::build(std::move(entries));
}

}  // namespace ff
