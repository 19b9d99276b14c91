#pragma once

#include <algorithm>
#include <string>
#include <string_view>
#include <vector>

namespace realize {

/// Column-aligned plain-text table. Widths count UTF-8 code points.
class TextTable {
 public:
  enum class Align { Left, Right };

  explicit TextTable(std::vector<Align> align, std::string gap = "  ")
      : align_(std::move(align)), gap_(std::move(gap)) {}

  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }

  static std::size_t width(std::string_view s) {
    return static_cast<std::size_t>(std::count_if(
        s.begin(), s.end(), [](char c) { return (static_cast<unsigned char>(c) & 0xC0) != 0x80; }));
  }

  std::string render() const {
    std::vector<std::size_t> w(align_.size(), 0);
    for (const auto& r : rows_) {
      for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], width(r[i]));
    }
    std::string out;
    for (const auto& r : rows_) {
      std::string line;
      for (std::size_t i = 0; i < w.size(); ++i) {
        const std::string cell = i < r.size() ? r[i] : std::string{};
        const std::string pad(w[i] - width(cell), ' ');
        if (i > 0) line += gap_;
        line += align_[i] == Align::Left ? cell + pad : pad + cell;
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      out += line;
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<Align> align_;
  std::string gap_;
  std::vector<std::vector<std::string>> rows_;
};

}  // namespace realize
