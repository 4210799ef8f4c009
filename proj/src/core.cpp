#include "htreval/core.hpp"

#include <algorithm>

namespace htreval {

namespace {

std::string describe_offset(std::size_t offset) {
  return "invalid UTF-8 at byte offset " + std::to_string(offset);
}

}  // namespace

std::u32string decode_utf8(std::string_view bytes) {
  std::u32string out;
  out.reserve(bytes.size());
  const auto* s = reinterpret_cast<const unsigned char*>(bytes.data());
  const std::size_t n = bytes.size();
  std::size_t i = 0;
  while (i < n) {
    const unsigned char b0 = s[i];
    if (b0 < 0x80) {
      out.push_back(b0);
      ++i;
      continue;
    }
    std::size_t len = 0;
    char32_t cp = 0;
    char32_t min_cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
      len = 2;
      cp = b0 & 0x1F;
      min_cp = 0x80;
    } else if ((b0 & 0xF0) == 0xE0) {
      len = 3;
      cp = b0 & 0x0F;
      min_cp = 0x800;
    } else if ((b0 & 0xF8) == 0xF0) {
      len = 4;
      cp = b0 & 0x07;
      min_cp = 0x10000;
    } else {
      throw IngestError(i, describe_offset(i));
    }
    if (i + len > n) throw IngestError(i, describe_offset(i));
    for (std::size_t k = 1; k < len; ++k) {
      const unsigned char bk = s[i + k];
      if ((bk & 0xC0) != 0x80) throw IngestError(i, describe_offset(i));
      cp = (cp << 6) | (bk & 0x3F);
    }
    // Overlong forms, surrogates and out-of-range values are not scalars.
    if (cp < min_cp || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      throw IngestError(i, describe_offset(i));
    }
    out.push_back(cp);
    i += len;
  }
  return out;
}

std::string encode_utf8(std::u32string_view scalars) {
  std::string out;
  out.reserve(scalars.size());
  for (char32_t c : scalars) {
    if (c < 0x80) {
      out.push_back(static_cast<char>(c));
    } else if (c < 0x800) {
      out.push_back(static_cast<char>(0xC0 | (c >> 6)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else if (c < 0x10000) {
      out.push_back(static_cast<char>(0xE0 | (c >> 12)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    } else {
      out.push_back(static_cast<char>(0xF0 | (c >> 18)));
      out.push_back(static_cast<char>(0x80 | ((c >> 12) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | ((c >> 6) & 0x3F)));
      out.push_back(static_cast<char>(0x80 | (c & 0x3F)));
    }
  }
  return out;
}

// White_Space property of the Unicode character database.
bool is_unicode_space(char32_t c) noexcept {
  switch (c) {
    case 0x09: case 0x0A: case 0x0B: case 0x0C: case 0x0D: case 0x20:
    case 0x85: case 0xA0: case 0x1680: case 0x2028: case 0x2029:
    case 0x202F: case 0x205F: case 0x3000:
      return true;
    default:
      return c >= 0x2000 && c <= 0x200A;
  }
}

WordToken::WordToken(std::string_view utf8)
    : text_(utf8), chars_(decode_utf8(utf8)) {
  if (chars_.empty()) throw IngestError(0, "empty word token");
  for (std::size_t i = 0; i < chars_.size(); ++i) {
    if (is_unicode_space(chars_[i])) {
      throw IngestError(0, "word token contains whitespace: '" + text_ + "'");
    }
  }
}

WordToken::WordToken(std::u32string scalars)
    : text_(encode_utf8(scalars)), chars_(std::move(scalars)) {
  if (chars_.empty()) throw IngestError(0, "empty word token");
  if (std::any_of(chars_.begin(), chars_.end(), is_unicode_space)) {
    throw IngestError(0, "word token contains whitespace: '" + text_ + "'");
  }
}

std::size_t PageTranscript::word_count() const noexcept {
  std::size_t n = 0;
  for (const auto& line : lines) n += line.size();
  return n;
}

std::size_t PageTranscript::char_count() const noexcept {
  std::size_t chars = 0;
  std::size_t words = 0;
  for (const auto& line : lines) {
    for (const auto& w : line) chars += w.length();
    words += line.size();
  }
  return words == 0 ? 0 : chars + words - 1;
}

PageTranscript tokenize_page(std::string_view raw, std::string page_id) {
  // Validate the whole buffer first so the reported offset is page-global.
  decode_utf8(raw);

  PageTranscript page;
  page.page_id = std::move(page_id);
  std::size_t start = 0;
  while (start < raw.size()) {
    std::size_t end = raw.find('\n', start);
    if (end == std::string_view::npos) end = raw.size();
    const std::u32string line = decode_utf8(raw.substr(start, end - start));

    Line words;
    std::size_t i = 0;
    while (i < line.size()) {
      while (i < line.size() && is_unicode_space(line[i])) ++i;
      std::size_t j = i;
      while (j < line.size() && !is_unicode_space(line[j])) ++j;
      if (j > i) words.emplace_back(line.substr(i, j - i));
      i = j;
    }
    page.lines.push_back(std::move(words));
    start = end + 1;
  }
  return page;
}

std::string serialize_page(const PageTranscript& page) {
  std::string out;
  for (const auto& line : page.lines) {
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (i) out.push_back(' ');
      out += line[i].text();
    }
    out.push_back('\n');
  }
  return out;
}

WordSequence flatten(const PageTranscript& page) {
  WordSequence out;
  out.reserve(page.word_count());
  for (const auto& line : page.lines) out.insert(out.end(), line.begin(), line.end());
  return out;
}

PageTranscript make_page(std::string page_id,
                         std::initializer_list<std::string_view> lines) {
  std::string raw;
  for (auto l : lines) {
    raw.append(l);
    raw.push_back('\n');
  }
  return tokenize_page(raw, std::move(page_id));
}

WordSequence make_words(std::string_view text) {
  return flatten(tokenize_page(text, {}));
}

std::u32string join_words(std::span<const WordToken> words) {
  std::u32string out;
  out.reserve(joined_length(words));
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) out.push_back(U' ');
    out += words[i].chars();
  }
  return out;
}

std::size_t joined_length(std::span<const WordToken> words) noexcept {
  if (words.empty()) return 0;
  std::size_t n = words.size() - 1;
  for (const auto& w : words) n += w.length();
  return n;
}

std::size_t Alignment::dummy_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const AlignPair& p) { return p.is_dummy(); }));
}

std::size_t Alignment::deletion_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const AlignPair& p) { return p.is_deletion(); }));
}

std::size_t Alignment::insertion_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(pairs.begin(), pairs.end(), [](const AlignPair& p) { return p.is_insertion(); }));
}

}  // namespace htreval
