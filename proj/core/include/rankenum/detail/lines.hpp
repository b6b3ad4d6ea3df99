#pragma once

#include <cctype>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rankenum/errors.hpp"

namespace rankenum::detail {

struct Tokens {
    int line = 0;
    std::vector<std::string> words;
};

/// Splits text into whitespace-separated tokens per line, dropping blank
/// lines and '#' comments, tracking 1-based line numbers.
class LineReader {
  public:
    explicit LineReader(std::string_view text) : text_(text) {}

    std::optional<Tokens> next_line() {
        while (pos_ < text_.size()) {
            std::size_t end = text_.find('\n', pos_);
            if (end == std::string_view::npos) end = text_.size();
            std::string_view raw = text_.substr(pos_, end - pos_);
            pos_ = end + 1;
            ++line_;
            std::size_t hash = raw.find('#');
            if (hash != std::string_view::npos) raw = raw.substr(0, hash);
            Tokens tokens;
            tokens.line = line_;
            std::size_t i = 0;
            while (i < raw.size()) {
                while (i < raw.size() && std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
                std::size_t start = i;
                while (i < raw.size() && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
                if (i > start) tokens.words.emplace_back(raw.substr(start, i - start));
            }
            if (!tokens.words.empty()) return tokens;
        }
        return std::nullopt;
    }

    Tokens expect_line(const std::string& what) {
        auto tokens = next_line();
        if (!tokens) throw ParseError(line_, "missing " + what);
        return *tokens;
    }

    int line_count() const { return line_; }

  private:
    std::string_view text_;
    std::size_t pos_ = 0;
    int line_ = 0;
};

}  // namespace rankenum::detail
