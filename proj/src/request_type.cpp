// Copyright 2026 The amtool Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "amtool/request_type.hpp"

#include <algorithm>
#include <cctype>

#include "amtool/error.hpp"

namespace amtool {

bool IsValidSourceName(std::string_view name) {
  if (name.empty() || name == kRootMarker) return false;
  return std::all_of(name.begin(), name.end(),
                     [](char c) { return std::isalnum(static_cast<unsigned char>(c)) != 0; });
}

const RequestType* RequestType::Find(std::string_view source) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), source,
                             [](const Entry& e, std::string_view s) { return e.source < s; });
  if (it == entries_.end() || it->source != source) return nullptr;
  return &it->request;
}

const RequestType& RequestType::At(std::string_view source) const {
  const RequestType* found = Find(source);
  if (found == nullptr) {
    throw Error(ErrorCode::kMissingSource,
                "type " + ToString() + " has no source " + std::string(source));
  }
  return *found;
}

void RequestType::Set(const std::string& source, RequestType request) {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), source,
                             [](const Entry& e, const std::string& s) { return e.source < s; });
  if (it != entries_.end() && it->source == source) {
    it->request = std::move(request);
  } else {
    entries_.insert(it, Entry{source, std::move(request)});
  }
}

void RequestType::Erase(std::string_view source) {
  std::erase_if(entries_, [&](const Entry& e) { return e.source == source; });
}

std::vector<std::string> RequestType::Domain() const {
  std::vector<std::string> names;
  for (const auto& e : entries_) names.push_back(e.source);
  return names;
}

std::string RequestType::EntriesToString() const {
  std::string out;
  for (size_t i = 0; i < entries_.size(); ++i) {
    if (i > 0) out += ",";
    out += entries_[i].source;
    if (!entries_[i].request.empty()) out += "[" + entries_[i].request.EntriesToString() + "]";
  }
  return out;
}

std::string RequestType::ToString() const { return "[" + EntriesToString() + "]"; }

bool operator==(const RequestType& a, const RequestType& b) {
  if (a.entries_.size() != b.entries_.size()) return false;
  for (size_t i = 0; i < a.entries_.size(); ++i) {
    if (a.entries_[i].source != b.entries_[i].source) return false;
    if (!(a.entries_[i].request == b.entries_[i].request)) return false;
  }
  return true;
}

std::strong_ordering operator<=>(const RequestType& a, const RequestType& b) {
  const size_t n = std::min(a.entries_.size(), b.entries_.size());
  for (size_t i = 0; i < n; ++i) {
    if (auto c = a.entries_[i].source <=> b.entries_[i].source; c != 0) return c;
    if (auto c = a.entries_[i].request <=> b.entries_[i].request; c != 0) return c;
  }
  return a.entries_.size() <=> b.entries_.size();
}

namespace {

class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  RequestType ParseTop() {
    SkipSpace();
    RequestType result;
    if (Peek() == '[') {
      ++pos_;
      result = ParseList(']');
      Expect(']');
    } else {
      result = ParseList('\0');
    }
    SkipSpace();
    if (pos_ != text_.size()) Fail("trailing characters");
    return result;
  }

 private:
  RequestType ParseList(char terminator) {
    RequestType type;
    SkipSpace();
    if (Peek() == terminator) return type;
    while (true) {
      SkipSpace();
      std::string name;
      while (pos_ < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_]))) {
        name += text_[pos_++];
      }
      if (!IsValidSourceName(name)) Fail("expected a source name");
      RequestType request;
      SkipSpace();
      if (Peek() == '[') {
        ++pos_;
        request = ParseList(']');
        Expect(']');
      }
      if (type.Contains(name)) Fail("duplicate source " + name);
      type.Set(name, std::move(request));
      SkipSpace();
      if (Peek() != ',') break;
      ++pos_;
    }
    return type;
  }

  char Peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void SkipSpace() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  void Expect(char c) {
    SkipSpace();
    if (Peek() != c) Fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  [[noreturn]] void Fail(const std::string& what) const {
    throw Error(ErrorCode::kMalformedType,
                what + " at offset " + std::to_string(pos_) + " in '" + std::string(text_) + "'");
  }

  std::string_view text_;
  size_t pos_ = 0;
};

}  // namespace

RequestType ParseRequestType(std::string_view text) { return TypeParser(text).ParseTop(); }

}  // namespace amtool
