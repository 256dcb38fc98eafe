#include "autogrp/text.hpp"

#include <cctype>
#include <cstring>
#include <fstream>
#include <sstream>

namespace autogrp {

Tokenizer::Tokenizer(const std::string& text) {
  int line = 1;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      line++;
      i++;
      continue;
    }
    if (isspace(static_cast<unsigned char>(c))) {
      i++;
      continue;
    }
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') i++;
      continue;
    }
    if (strchr("{}=;:,", c)) {
      toks_.push_back(std::string(1, c));
      lines_.push_back(line);
      i++;
      continue;
    }
    size_t j = i;
    while (j < text.size() && !isspace(static_cast<unsigned char>(text[j])) &&
           !strchr("{}=;:,#", text[j]))
      j++;
    toks_.push_back(text.substr(i, j - i));
    lines_.push_back(line);
    i = j;
  }
}

const std::string& Tokenizer::peek() const {
  static const std::string kEof = "<eof>";
  return pos_ < toks_.size() ? toks_[pos_] : kEof;
}

std::string Tokenizer::next() {
  if (done()) fail("unexpected end of input");
  return toks_[pos_++];
}

void Tokenizer::expect(const std::string& tok) {
  std::string got = next();
  if (got != tok) {
    pos_--;
    fail("expected '" + tok + "', got '" + got + "'");
  }
}

bool Tokenizer::accept(const std::string& tok) {
  if (!done() && toks_[pos_] == tok) {
    pos_++;
    return true;
  }
  return false;
}

void Tokenizer::fail(const std::string& msg) const {
  int line = pos_ < lines_.size() ? lines_[pos_]
                                  : (lines_.empty() ? 0 : lines_.back());
  throw input_error("line " + std::to_string(line) + ": " + msg);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw input_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw input_error("cannot write '" + path + "'");
  out << content;
}

}  // namespace autogrp
