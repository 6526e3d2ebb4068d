#include "arabizi/langmodel.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <sstream>

#include "arabizi/utf8.hpp"

namespace arabizi {

namespace {

std::string sha256_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(len * 2);
    for (unsigned i = 0; i < len; ++i) {
        out += kHex[digest[i] >> 4];
        out += kHex[digest[i] & 0xF];
    }
    return out;
}

// %.17g round-trips doubles exactly through parse and reprint.
std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::vector<std::string> split(std::string_view s, char sep) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= s.size(); ++i) {
        if (i == s.size() || s[i] == sep) {
            out.emplace_back(s.substr(start, i - start));
            start = i + 1;
        }
    }
    return out;
}

std::string read_rest(std::istream& in) {
    std::ostringstream body;
    body << in.rdbuf();
    return std::move(body).str();
}

// header: #<KIND> <version> key=value...
struct Header {
    std::string kind;
    std::string version;
    std::map<std::string, std::string> fields;
};

Header parse_header(const std::string& line, std::string_view expected_kind) {
    Header h;
    std::istringstream ss(line);
    std::string tok;
    if (!(ss >> h.kind >> h.version)) throw CorruptModel("bad model header");
    if (h.kind != expected_kind) {
        throw CorruptModel("expected a " + std::string(expected_kind) + " header, got '" +
                           h.kind + "'");
    }
    if (h.version != "v1") throw VersionMismatch("unsupported model version '" + h.version + "'");
    while (ss >> tok) {
        const auto eq = tok.find('=');
        if (eq == std::string::npos) throw CorruptModel("bad header field '" + tok + "'");
        h.fields[tok.substr(0, eq)] = tok.substr(eq + 1);
    }
    return h;
}

std::uint64_t header_u64(const Header& h, const std::string& key) {
    const auto it = h.fields.find(key);
    if (it == h.fields.end()) throw CorruptModel("missing header field '" + key + "'");
    try {
        return std::stoull(it->second);
    } catch (const std::exception&) {
        throw CorruptModel("bad header field '" + key + "'");
    }
}

const std::string& header_str(const Header& h, const std::string& key) {
    const auto it = h.fields.find(key);
    if (it == h.fields.end()) throw CorruptModel("missing header field '" + key + "'");
    return it->second;
}

void check_body_checksum(const Header& h, const std::string& body) {
    if (sha256_hex(body) != header_str(h, "sha256")) {
        throw CorruptModel("model checksum mismatch");
    }
}

constexpr char kUnkToken[] = "<unk>";

}  // namespace

std::vector<std::string> corpus_words(std::string_view message) {
    const std::u32string cps = utf8::decode(message);
    std::vector<std::string> words;
    std::size_t i = 0;
    while (i < cps.size()) {
        if (utf8::is_whitespace(cps[i])) {
            ++i;
            continue;
        }
        std::size_t end = i;
        while (end < cps.size() && !utf8::is_whitespace(cps[end])) ++end;
        std::size_t a = i;
        std::size_t b = end;
        while (a < b && utf8::is_punctuation(cps[a])) ++a;
        while (b > a && utf8::is_punctuation(cps[b - 1])) --b;
        bool arabic = a < b;
        for (std::size_t k = a; k < b && arabic; ++k) {
            if (!utf8::is_arabic_block(cps[k])) arabic = false;
        }
        if (arabic) {
            words.push_back(utf8::encode(std::u32string_view(cps.data() + a, b - a)));
        }
        i = end;
    }
    return words;
}

// --- FrequencyModel ---

FrequencyModel FrequencyModel::build(const std::vector<std::string>& messages) {
    FrequencyModel model;
    for (const std::string& msg : messages) {
        for (std::string& w : corpus_words(msg)) {
            ++model.counts_[std::move(w)];
            ++model.total_tokens_;
        }
    }
    if (model.total_tokens_ == 0) throw EmptyCorpus("no countable words in corpus");
    return model;
}

FrequencyModel FrequencyModel::build(std::istream& corpus) {
    std::vector<std::string> messages;
    std::string line;
    while (std::getline(corpus, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        messages.push_back(line);
    }
    return build(messages);
}

std::uint64_t FrequencyModel::count(std::string_view word) const {
    const auto it = counts_.find(std::string(word));
    return it == counts_.end() ? 0 : it->second;
}

void FrequencyModel::merge(const FrequencyModel& other) {
    for (const auto& [word, c] : other.counts_) counts_[word] += c;
    total_tokens_ += other.total_tokens_;
}

void FrequencyModel::save(std::ostream& out) const {
    std::vector<const std::string*> words;
    words.reserve(counts_.size());
    for (const auto& [word, c] : counts_) words.push_back(&word);
    std::sort(words.begin(), words.end(),
              [](const std::string* a, const std::string* b) { return *a < *b; });

    std::string body;
    for (const std::string* w : words) {
        body += *w;
        body += '\t';
        body += std::to_string(counts_.at(*w));
        body += '\n';
    }
    out << "#FREQ v1 total=" << total_tokens_ << " vocab=" << counts_.size()
        << " sha256=" << sha256_hex(body) << "\n"
        << body;
}

void FrequencyModel::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write model file '" + path + "'");
    save(out);
    if (!out) throw IoFailure("error writing model file '" + path + "'");
}

FrequencyModel FrequencyModel::load(std::istream& in) {
    std::string header_line;
    if (!std::getline(in, header_line)) throw CorruptModel("empty model file");
    const Header header = parse_header(header_line, "#FREQ");
    const std::string body = read_rest(in);
    check_body_checksum(header, body);

    FrequencyModel model;
    for (const std::string& line : split(body, '\n')) {
        if (line.empty()) continue;
        const auto fields = split(line, '\t');
        if (fields.size() != 2) throw CorruptModel("bad frequency entry '" + line + "'");
        std::uint64_t c = 0;
        try {
            c = std::stoull(fields[1]);
        } catch (const std::exception&) {
            throw CorruptModel("bad count in entry '" + line + "'");
        }
        if (c == 0 || fields[0].empty() || !model.counts_.emplace(fields[0], c).second) {
            throw CorruptModel("bad frequency entry '" + line + "'");
        }
        model.total_tokens_ += c;
    }
    if (model.total_tokens_ != header_u64(header, "total") ||
        model.counts_.size() != header_u64(header, "vocab")) {
        throw CorruptModel("model totals disagree with header");
    }
    return model;
}

FrequencyModel FrequencyModel::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open model file '" + path + "'");
    return load(in);
}

// --- NGramModel ---

NGramModel NGramModel::build(const std::vector<std::string>& messages, int order) {
    if (order < 1 || order > kMaxOrder) {
        throw BadOrder("order " + std::to_string(order) + " outside 1.." +
                       std::to_string(kMaxOrder));
    }

    // Raw counts per level; n-grams never cross message boundaries.
    std::vector<std::unordered_map<std::string, std::uint64_t>> counts(order);
    std::uint64_t total = 0;
    for (const std::string& msg : messages) {
        const std::vector<std::string> words = corpus_words(msg);
        total += words.size();
        for (int k = 1; k <= order; ++k) {
            for (std::size_t i = 0; i + k <= words.size(); ++i) {
                std::string joined = words[i];
                for (int j = 1; j < k; ++j) {
                    joined += ' ';
                    joined += words[i + j];
                }
                ++counts[k - 1][std::move(joined)];
            }
        }
    }
    if (total == 0) throw EmptyCorpus("no countable words in corpus");

    NGramModel model;
    model.order_ = order;
    model.total_tokens_ = total;
    model.logprobs_.resize(order);
    if (order > 1) model.backoffs_.resize(order - 1);

    // Unigrams: discounted counts over the token total, leftover mass to UNK.
    for (const auto& [word, c] : counts[0]) {
        model.vocab_.insert(word);
        model.logprobs_[0][word] =
            std::log((static_cast<double>(c) - kDiscount) / static_cast<double>(total));
    }
    model.unk_logprob_ = std::log(kDiscount * static_cast<double>(counts[0].size()) /
                                  static_cast<double>(total));

    // Higher orders, bottom up. For each history: the follower total, the
    // distinct-follower count, and then the interpolated estimates.
    for (int k = 2; k <= order; ++k) {
        std::unordered_map<std::string, std::uint64_t> hist_total;
        std::unordered_map<std::string, std::uint64_t> hist_distinct;
        for (const auto& [gram, c] : counts[k - 1]) {
            const std::string history = gram.substr(0, gram.rfind(' '));
            hist_total[history] += c;
            hist_distinct[history] += 1;
        }
        for (const auto& [history, ht] : hist_total) {
            const double lambda = kDiscount * static_cast<double>(hist_distinct.at(history)) /
                                  static_cast<double>(ht);
            model.backoffs_[k - 2][history] = std::log(lambda);
        }
        for (const auto& [gram, c] : counts[k - 1]) {
            const std::string history = gram.substr(0, gram.rfind(' '));
            const std::string suffix = gram.substr(gram.find(' ') + 1);  // drop oldest word
            const double lambda =
                std::exp(model.backoffs_[k - 2].at(history));
            const double lower = std::exp(model.logprobs_[k - 2].at(suffix));
            const double p = (static_cast<double>(c) - kDiscount) /
                                 static_cast<double>(hist_total.at(history)) +
                             lambda * lower;
            model.logprobs_[k - 1][gram] = std::log(p);
        }
    }
    return model;
}

NGramModel NGramModel::build(std::istream& corpus, int order) {
    std::vector<std::string> messages;
    std::string line;
    while (std::getline(corpus, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        messages.push_back(line);
    }
    return build(messages, order);
}

double NGramModel::unigram_logprob(std::string_view word) const {
    const auto it = logprobs_[0].find(std::string(word));
    return it == logprobs_[0].end() ? unk_logprob_ : it->second;
}

double NGramModel::conditional_logprob(std::span<const std::string> context,
                                       std::string_view word) const {
    if (context.size() > static_cast<std::size_t>(order_ - 1)) {
        context = context.subspan(context.size() - (order_ - 1));
    }
    double backoff_acc = 0.0;
    while (!context.empty()) {
        std::string joined;
        for (const std::string& c : context) {
            joined += c;
            joined += ' ';
        }
        const std::string gram = joined + std::string(word);
        const auto& level = logprobs_[context.size()];
        const auto it = level.find(gram);
        if (it != level.end()) return backoff_acc + it->second;

        joined.pop_back();  // the history itself
        const auto& bo = backoffs_[context.size() - 1];
        const auto bit = bo.find(joined);
        if (bit != bo.end()) backoff_acc += bit->second;  // unseen history has weight 1
        context = context.subspan(1);
    }
    return backoff_acc + unigram_logprob(word);
}

void NGramModel::save(std::ostream& out) const {
    std::string body;
    for (int k = 1; k <= order_; ++k) {
        body += "#ORDER " + std::to_string(k) + "\n";
        std::vector<const std::string*> grams;
        grams.reserve(logprobs_[k - 1].size() + (k == 1 ? 1 : 0));
        for (const auto& [gram, lp] : logprobs_[k - 1]) grams.push_back(&gram);
        static const std::string kUnk = kUnkToken;
        if (k == 1) grams.push_back(&kUnk);
        std::sort(grams.begin(), grams.end(),
                  [](const std::string* a, const std::string* b) { return *a < *b; });
        for (const std::string* gram : grams) {
            const double lp = (*gram == kUnkToken && k == 1 && !logprobs_[0].count(kUnkToken))
                                  ? unk_logprob_
                                  : logprobs_[k - 1].at(*gram);
            body += format_double(lp);
            body += '\t';
            body += *gram;
            if (k < order_) {
                const auto it = backoffs_[k - 1].find(*gram);
                body += '\t';
                body += format_double(it == backoffs_[k - 1].end() ? 0.0 : it->second);
            }
            body += '\n';
        }
    }
    out << "#NGRAM v1 order=" << order_ << " total=" << total_tokens_
        << " vocab=" << vocab_.size() << " sha256=" << sha256_hex(body) << "\n"
        << body;
}

void NGramModel::save_file(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoFailure("cannot write model file '" + path + "'");
    save(out);
    if (!out) throw IoFailure("error writing model file '" + path + "'");
}

NGramModel NGramModel::load(std::istream& in) {
    std::string header_line;
    if (!std::getline(in, header_line)) throw CorruptModel("empty model file");
    const Header header = parse_header(header_line, "#NGRAM");
    const std::string body = read_rest(in);
    check_body_checksum(header, body);

    const std::uint64_t order = header_u64(header, "order");
    if (order < 1 || order > kMaxOrder) throw CorruptModel("bad order in header");

    NGramModel model;
    model.order_ = static_cast<int>(order);
    model.total_tokens_ = header_u64(header, "total");
    model.logprobs_.resize(model.order_);
    if (model.order_ > 1) model.backoffs_.resize(model.order_ - 1);

    int level = 0;
    bool saw_unk = false;
    for (const std::string& line : split(body, '\n')) {
        if (line.empty()) continue;
        if (line.rfind("#ORDER ", 0) == 0) {
            level = std::atoi(line.c_str() + 7);
            if (level < 1 || level > model.order_) throw CorruptModel("bad section '" + line + "'");
            continue;
        }
        if (level == 0) throw CorruptModel("entry before first section");
        const auto fields = split(line, '\t');
        const bool highest = level == model.order_;
        if (fields.size() != (highest ? 2u : 3u)) {
            throw CorruptModel("bad n-gram entry '" + line + "'");
        }
        double lp = 0.0;
        double bo = 0.0;
        try {
            lp = std::stod(fields[0]);
            if (!highest) bo = std::stod(fields[2]);
        } catch (const std::exception&) {
            throw CorruptModel("bad number in entry '" + line + "'");
        }
        const std::string& gram = fields[1];
        if (gram.empty()) throw CorruptModel("empty n-gram");
        if (level == 1 && gram == kUnkToken) {
            model.unk_logprob_ = lp;
            saw_unk = true;
            continue;
        }
        if (!model.logprobs_[level - 1].emplace(gram, lp).second) {
            throw CorruptModel("duplicate n-gram '" + gram + "'");
        }
        if (!highest && bo != 0.0) model.backoffs_[level - 1][gram] = bo;
        if (level == 1) model.vocab_.insert(gram);
    }
    if (!saw_unk) throw CorruptModel("missing <unk> entry");
    if (model.vocab_.size() != header_u64(header, "vocab")) {
        throw CorruptModel("model totals disagree with header");
    }
    return model;
}

NGramModel NGramModel::load_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open model file '" + path + "'");
    return load(in);
}

ModelKind peek_model_kind(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoFailure("cannot open model file '" + path + "'");
    std::string line;
    std::getline(in, line);
    if (line.rfind("#FREQ ", 0) == 0) return ModelKind::Frequency;
    if (line.rfind("#NGRAM ", 0) == 0) return ModelKind::NGram;
    throw CorruptModel("unrecognized model header in '" + path + "'");
}

// --- corpus slicing ---

bool is_allowed_fraction(int fraction) {
    return std::find(std::begin(kAllowedFractions), std::end(kAllowedFractions), fraction) !=
           std::end(kAllowedFractions);
}

bool slice_keeps(std::string_view message, int fraction, std::uint64_t seed) {
    if (!is_allowed_fraction(fraction)) {
        throw std::invalid_argument("fraction must be one of 1,5,10,25,50,75,100");
    }
    // FNV-1a over the message bytes, seed folded into the offset basis.
    std::uint64_t h = 14695981039346656037ull ^ (seed * 0x9E3779B97F4A7C15ull);
    for (const char c : message) {
        h ^= static_cast<unsigned char>(c);
        h *= 1099511628211ull;
    }
    return h % 10000 < static_cast<std::uint64_t>(fraction) * 100;
}

std::vector<std::string> slice_corpus(const std::vector<std::string>& messages, int fraction,
                                      std::uint64_t seed, CorpusSlice* info) {
    std::vector<std::string> kept;
    for (const std::string& msg : messages) {
        if (slice_keeps(msg, fraction, seed)) kept.push_back(msg);
    }
    if (info) *info = CorpusSlice{fraction, seed, kept.size()};
    return kept;
}

}  // namespace arabizi
