#include <doctest.h>

#include "expertquest/tagger.hpp"

TEST_SUITE_BEGIN("textpipe");

using expertquest::textpipe::classify_token;
using expertquest::textpipe::LexiconTagger;
using expertquest::textpipe::TokenClass;

TEST_CASE("classify_token on the example sentences") {
  CHECK(classify_token("dog") == TokenClass::Noun);
  CHECK(classify_token("white") == TokenClass::Other);
  CHECK(classify_token("black") == TokenClass::Other);
  CHECK(classify_token("and") == TokenClass::Other);
  CHECK(classify_token("the") == TokenClass::Other);
  CHECK(classify_token("up") == TokenClass::Other);
  CHECK(classify_token("over") == TokenClass::Other);
  CHECK(classify_token("ran") == TokenClass::Verb);
  CHECK(classify_token("running") == TokenClass::Verb);
  CHECK(classify_token("barking") == TokenClass::Verb);
  CHECK(classify_token("mouse") == TokenClass::Noun);
  CHECK(classify_token("runner") == TokenClass::Noun);
}

TEST_CASE("tagger fallbacks") {
  CHECK(classify_token("2015") == TokenClass::Other);
  CHECK(classify_token("quickly") == TokenClass::Other);
  CHECK(classify_token("dangerous") == TokenClass::Other);
  CHECK(classify_token("jumped") == TokenClass::Verb);
  CHECK(classify_token("zyxwv") == TokenClass::Noun);
}

TEST_CASE("lexicon overrides take precedence") {
  LexiconTagger t;
  t.set("dog", TokenClass::Other);
  CHECK(t.classify("dog") == TokenClass::Other);
  t.set("quickly", TokenClass::Verb);
  CHECK(t.classify("quickly") == TokenClass::Verb);
  CHECK(classify_token("dog") == TokenClass::Noun);
}

TEST_SUITE_END();
