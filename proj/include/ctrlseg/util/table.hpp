#pragma once

#include <algorithm>
#include <string>
#include <vector>

namespace ctrlseg::util {

// Rows of cells rendered either as space-aligned text (first column left,
// the rest right-aligned) or RFC 4180 CSV.
class TextTable {
 public:
  void header(std::vector<std::string> cells) { header_ = std::move(cells); }
  void row(std::vector<std::string> cells) { rows_.push_back(std::move(cells)); }
  // Separator rule drawn under the previous row in text output.
  void rule() { rules_.push_back(rows_.size()); }

  std::string text() const {
    std::vector<std::size_t> width;
    auto measure = [&](const std::vector<std::string>& r) {
      if (width.size() < r.size()) width.resize(r.size(), 0);
      for (std::size_t i = 0; i < r.size(); ++i) width[i] = std::max(width[i], r[i].size());
    };
    measure(header_);
    for (const auto& r : rows_) measure(r);
    std::size_t line_width = 0;
    for (std::size_t w : width) line_width += w + 2;
    auto emit = [&](const std::vector<std::string>& r) {
      std::string line;
      for (std::size_t i = 0; i < width.size(); ++i) {
        std::string cell = i < r.size() ? r[i] : "";
        std::string pad(width[i] - cell.size(), ' ');
        if (i) line += "  ";
        line += i == 0 ? cell + pad : pad + cell;
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      return line + "\n";
    };
    std::string out;
    if (!header_.empty()) {
      out += emit(header_);
      out += std::string(line_width > 2 ? line_width - 2 : 0, '-') + "\n";
    }
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (std::find(rules_.begin(), rules_.end(), i) != rules_.end() && i > 0)
        out += std::string(line_width > 2 ? line_width - 2 : 0, '-') + "\n";
      out += emit(rows_[i]);
    }
    return out;
  }

  std::string csv() const {
    auto field = [](const std::string& s) {
      if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
      std::string q = "\"";
      for (char c : s) {
        if (c == '"') q += '"';
        q += c;
      }
      return q + "\"";
    };
    auto emit = [&](const std::vector<std::string>& r) {
      std::string line;
      for (std::size_t i = 0; i < r.size(); ++i) {
        if (i) line += ",";
        line += field(r[i]);
      }
      return line + "\n";
    };
    std::string out;
    if (!header_.empty()) out += emit(header_);
    for (const auto& r : rows_) out += emit(r);
    return out;
  }

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<std::size_t> rules_;
};

}  // namespace ctrlseg::util
