#include "counterquill/corpus.hpp"

#include <fstream>
#include <sstream>

#include "counterquill/bundled_data.hpp"
#include "counterquill/error.hpp"

namespace counterquill {

std::vector<std::string> check_instance(const HateSpeechInstance& instance) {
    std::vector<std::string> problems;
    if (instance.id.empty()) problems.push_back("empty id");
    if (instance.gold_identity.empty()) problems.push_back("no gold identity span");
    if (instance.gold_action.empty()) problems.push_back("no gold action span");
    for (const auto& s : instance.gold_identity) {
        if (s.kind != SpanKind::identity) problems.push_back("gold_identity holds a non-identity span");
    }
    for (const auto& s : instance.gold_action) {
        if (s.kind != SpanKind::action) problems.push_back("gold_action holds a non-action span");
    }
    std::vector<TextSpan> all = instance.gold_identity;
    all.insert(all.end(), instance.gold_action.begin(), instance.gold_action.end());
    for (const auto& v : validate_spans(instance.text, all)) {
        problems.push_back(std::string(to_string(v.reason)) + " span [" +
                           std::to_string(v.span.start) + "," + std::to_string(v.span.end) + ")");
    }
    return problems;
}

Corpus::Corpus(std::vector<HateSpeechInstance> instances) : instances_(std::move(instances)) {
    for (std::size_t i = 0; i < instances_.size(); ++i) {
        const auto& inst = instances_[i];
        auto problems = check_instance(inst);
        if (!problems.empty()) {
            fail(ErrorCode::invalid_argument,
                 "corpus instance '" + inst.id + "': " + problems.front());
        }
        if (!by_id_.emplace(inst.id, i).second) {
            fail(ErrorCode::invalid_argument, "duplicate corpus id '" + inst.id + "'");
        }
    }
}

Corpus Corpus::parse_jsonl(std::istream& in) {
    std::vector<HateSpeechInstance> items;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        try {
            items.push_back(Json::parse(line).get<HateSpeechInstance>());
        } catch (const Json::exception& e) {
            fail(ErrorCode::invalid_argument,
                 "corpus line " + std::to_string(line_no) + ": " + e.what());
        }
    }
    return Corpus(std::move(items));
}

Corpus Corpus::bundled() {
    std::istringstream in{std::string(data::corpus_jsonl)};
    return parse_jsonl(in);
}

Corpus Corpus::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::not_found, "cannot open corpus file " + path.string());
    return parse_jsonl(in);
}

const HateSpeechInstance& Corpus::get(const std::string& id) const {
    auto it = by_id_.find(id);
    if (it == by_id_.end()) fail(ErrorCode::not_found, "unknown instance '" + id + "'");
    return instances_[it->second];
}

std::vector<const HateSpeechInstance*> Corpus::by_theme(Theme theme) const {
    std::vector<const HateSpeechInstance*> out;
    for (const auto& inst : instances_) {
        if (inst.theme == theme) out.push_back(&inst);
    }
    return out;
}

}  // namespace counterquill
