#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "counterquill/domain.hpp"
#include "counterquill/spans.hpp"

namespace counterquill {

// Structural problems with one instance; empty when the instance is valid.
std::vector<std::string> check_instance(const HateSpeechInstance& instance);

// Read-only collection of pre-labelled instances, kept in file order.
class Corpus {
public:
    Corpus() = default;
    // Throws Error(invalid_argument) on duplicate ids or invalid instances.
    explicit Corpus(std::vector<HateSpeechInstance> instances);

    // One JSON document per line; blank lines are skipped.
    static Corpus parse_jsonl(std::istream& in);
    static Corpus load(const std::filesystem::path& path);
    // The eighteen annotated instances shipped with the library.
    static Corpus bundled();

    const std::vector<HateSpeechInstance>& instances() const { return instances_; }
    std::size_t size() const { return instances_.size(); }
    bool empty() const { return instances_.empty(); }

    // Throws Error(not_found).
    const HateSpeechInstance& get(const std::string& id) const;
    bool contains(const std::string& id) const { return by_id_.count(id) != 0; }

    std::vector<const HateSpeechInstance*> by_theme(Theme theme) const;

private:
    std::vector<HateSpeechInstance> instances_;
    std::map<std::string, std::size_t> by_id_;
};

}  // namespace counterquill
