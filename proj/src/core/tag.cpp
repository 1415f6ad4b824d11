#include "tagnav/core/tag.hpp"

#include <algorithm>

#include <unicode/normalizer2.h>
#include <unicode/unistr.h>
#include <unicode/ustring.h>

#include "tagnav/error.hpp"

namespace tagnav {

namespace {

bool is_ascii(std::string_view text) {
  return std::all_of(text.begin(), text.end(),
                     [](char c) { return static_cast<unsigned char>(c) < 0x80; });
}

icu::UnicodeString decode_utf8(std::string_view text) {
  UErrorCode status = U_ZERO_ERROR;
  int32_t length = 0;
  u_strFromUTF8(nullptr, 0, &length, text.data(), static_cast<int32_t>(text.size()), &status);
  if (status != U_BUFFER_OVERFLOW_ERROR && U_FAILURE(status)) {
    throw Error(ErrorCode::InvalidTag, "tag label is not well-formed UTF-8");
  }
  icu::UnicodeString out;
  status = U_ZERO_ERROR;
  UChar* buffer = out.getBuffer(length);
  u_strFromUTF8(buffer, length, nullptr, text.data(), static_cast<int32_t>(text.size()), &status);
  out.releaseBuffer(length);
  if (U_FAILURE(status)) {
    throw Error(ErrorCode::InvalidTag, "tag label is not well-formed UTF-8");
  }
  return out;
}

}  // namespace

std::string normalize_nfc(std::string_view text) {
  if (is_ascii(text)) return std::string(text);

  icu::UnicodeString decoded = decode_utf8(text);
  UErrorCode status = U_ZERO_ERROR;
  const icu::Normalizer2* nfc = icu::Normalizer2::getNFCInstance(status);
  if (U_FAILURE(status)) throw Error(ErrorCode::InvalidTag, "NFC normalizer unavailable");
  icu::UnicodeString normalized = nfc->normalize(decoded, status);
  if (U_FAILURE(status)) throw Error(ErrorCode::InvalidTag, "tag label could not be normalized");

  std::string out;
  normalized.toUTF8String(out);
  return out;
}

Tag Tag::make(std::string_view label) {
  if (label.empty()) throw Error(ErrorCode::InvalidTag, "tag label is empty");
  return Tag(normalize_nfc(label));
}

TagId Vocabulary::intern(const Tag& tag) {
  auto [it, inserted] = ids_.try_emplace(tag.label(), TagId{static_cast<std::uint32_t>(labels_.size())});
  if (inserted) labels_.push_back(tag.label());
  return it->second;
}

std::optional<TagId> Vocabulary::find(const Tag& tag) const {
  auto it = ids_.find(tag.label());
  if (it == ids_.end()) return std::nullopt;
  return it->second;
}

std::optional<TagId> Vocabulary::find(std::string_view label) const {
  try {
    return find(Tag::make(label));
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace tagnav
