#pragma once

#include <set>
#include <string>

namespace grantrec {

struct Researcher {
    std::string id;
    std::string display_name;
    std::set<std::string> kaken_keywords;  // NFC
    std::set<std::string> paper_document_ids;
    std::set<std::string> past_kaken_document_ids;

    auto operator==(const Researcher&) const -> bool = default;
};

}  // namespace grantrec
