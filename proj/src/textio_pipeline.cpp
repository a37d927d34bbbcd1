#include <cctype>

#include "fairkit/textio.hpp"

namespace fairkit::textio {
namespace {

struct Token {
  enum class Kind { name, lparen, rparen, comma, end };
  Kind kind;
  std::string text;
  int line;
  int col;
};

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
    } else if (c == '(' || c == ')' || c == ',') {
      Token::Kind k = c == '(' ? Token::Kind::lparen
                    : c == ')' ? Token::Kind::rparen
                               : Token::Kind::comma;
      out.push_back({k, std::string(1, c), line, col});
      ++col;
      ++i;
    } else if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = i;
      while (i < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '-'))
        ++i;
      out.push_back({Token::Kind::name, std::string(text.substr(start, i - start)), line, col});
      col += static_cast<int>(i - start);
    } else {
      throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Token::Kind::end, "", line, col});
  return out;
}

struct Ast {
  std::string name;
  int line;
  int col;
  std::vector<Ast> args;
};

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  Ast parse() {
    Ast root = expr();
    const Token& t = peek();
    if (t.kind != Token::Kind::end)
      throw ParseError("unexpected trailing input '" + t.text + "'", t.line, t.col);
    return root;
  }

 private:
  const Token& peek() const { return tokens_[pos_]; }
  const Token& advance() { return tokens_[pos_++]; }

  Ast expr() {
    const Token& head = peek();
    if (head.kind != Token::Kind::name) {
      std::string found =
          head.kind == Token::Kind::end ? "end of input" : "'" + head.text + "'";
      throw ParseError("expected tile name, found " + found, head.line, head.col);
    }
    advance();
    Ast node{head.text, head.line, head.col, {}};
    if (peek().kind == Token::Kind::lparen) {
      advance();
      node.args.push_back(expr());
      while (peek().kind == Token::Kind::comma) {
        advance();
        node.args.push_back(expr());
      }
      const Token& closing = peek();
      if (closing.kind != Token::Kind::rparen) {
        std::string found =
            closing.kind == Token::Kind::end ? "end of input" : "'" + closing.text + "'";
        throw ParseError("expected ')' or ',', found " + found, closing.line, closing.col);
      }
      advance();
    }
    return node;
  }

  std::vector<Token> tokens_;
  size_t pos_ = 0;
};

int build(const Ast& ast, const tiles::Registry& registry, tiles::Pipeline& p) {
  const tiles::Tile* tile = registry.find(ast.name);
  if (!tile) throw ParseError("unknown tile '" + ast.name + "'", ast.line, ast.col);

  std::vector<int> children;
  for (const auto& arg : ast.args) children.push_back(build(arg, registry, p));

  tiles::SourceSpan span{ast.line, ast.col};
  if (children.size() >= 2 && ast.name != "pair") {
    const tiles::Tile* pair = registry.find("pair");
    if (!pair) throw ParseError("unknown tile 'pair'", ast.line, ast.col);
    children = {p.add_node(*pair, std::move(children), span)};
  }
  return p.add_node(*tile, std::move(children), span);
}

std::string render(const tiles::Pipeline& p, int i) {
  const auto& nd = p.node(i);
  if (nd.args.empty()) return nd.tile.name;

  // Fold the pair node synthesized for n-ary application back in.
  const std::vector<int>* args = &nd.args;
  if (nd.args.size() == 1 && nd.tile.name != "pair") {
    const auto& child = p.node(nd.args[0]);
    if (child.tile.name == "pair" && child.args.size() >= 2) args = &child.args;
  }

  std::string out = nd.tile.name + "(";
  for (size_t k = 0; k < args->size(); ++k) {
    if (k) out += ", ";
    out += render(p, (*args)[k]);
  }
  return out + ")";
}

}  // namespace

tiles::Pipeline parse_pipeline(std::string_view text, const tiles::Registry& registry) {
  Ast ast = Parser(lex(text)).parse();
  tiles::Pipeline p;
  build(ast, registry, p);
  auto checked = tiles::typecheck(p);
  if (auto* err = std::get_if<tiles::TypeError>(&checked)) throw tiles::PipelineTypeError(*err);
  return p;
}

std::string pretty_print(const tiles::Pipeline& p) {
  auto root = tiles::find_sink(p);
  if (!root) throw Error("pipeline has no unique sink");
  return render(p, *root);
}

}  // namespace fairkit::textio
