#include "spa/ir/parser.hpp"

#include <cassert>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "spa/ir/hierarchy.hpp"

namespace spa::ir {

namespace {

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

enum class Tok { Ident, Int, String, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  int line = 1;
  int column = 1;
};

const std::set<std::string>& reservedWords() {
  static const std::set<std::string> words = {
      "class",  "interface", "extends", "implements", "static",
      "new",    "return",    "if",      "goto",       "switch",
      "case",   "default",   "throw",   "catch",      "int",
      "boolean", "void",     "null",    "true",       "false",
      "invokestatic", "invokevirtual", "invokespecial"};
  return words;
}

class Lexer {
 public:
  explicit Lexer(std::string_view text) : text_(text) { tokenize(); }

  const std::vector<Token>& tokens() const { return tokens_; }

 private:
  void tokenize() {
    size_t i = 0;
    int line = 1, col = 1;
    auto advance = [&](size_t n) {
      for (size_t k = 0; k < n; ++k) {
        if (text_[i + k] == '\n') {
          ++line;
          col = 1;
        } else {
          ++col;
        }
      }
      i += n;
    };
    while (i < text_.size()) {
      char c = text_[i];
      if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
        advance(1);
        continue;
      }
      if (c == '/' && i + 1 < text_.size() && text_[i + 1] == '/') {
        while (i < text_.size() && text_[i] != '\n') advance(1);
        continue;
      }
      int tline = line, tcol = col;
      if (isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$') {
        size_t j = i;
        while (j < text_.size() &&
               (isalnum(static_cast<unsigned char>(text_[j])) ||
                text_[j] == '_' || text_[j] == '$')) {
          ++j;
        }
        push(Tok::Ident, std::string(text_.substr(i, j - i)), tline, tcol);
        advance(j - i);
        continue;
      }
      if (isdigit(static_cast<unsigned char>(c))) {
        size_t j = i;
        while (j < text_.size() && isdigit(static_cast<unsigned char>(text_[j])))
          ++j;
        push(Tok::Int, std::string(text_.substr(i, j - i)), tline, tcol);
        advance(j - i);
        continue;
      }
      if (c == '"') {
        std::string value;
        size_t j = i + 1;
        while (j < text_.size() && text_[j] != '"') {
          if (text_[j] == '\\' && j + 1 < text_.size()) {
            char e = text_[j + 1];
            value += e == 'n' ? '\n' : e == 't' ? '\t' : e;
            j += 2;
          } else if (text_[j] == '\n') {
            throw ParseError("unterminated string literal", tline, tcol);
          } else {
            value += text_[j++];
          }
        }
        if (j >= text_.size())
          throw ParseError("unterminated string literal", tline, tcol);
        push(Tok::String, value, tline, tcol);
        advance(j + 1 - i);
        continue;
      }
      // Longest-match punctuation.
      static const char* two[] = {"==", "!=", "<=", ">=", "&&", "||"};
      bool matched = false;
      for (const char* t : two) {
        if (text_.substr(i, 2) == t) {
          push(Tok::Punct, t, tline, tcol);
          advance(2);
          matched = true;
          break;
        }
      }
      if (matched) continue;
      static const std::string single = "{}()[];:,.=<>+-*/%!@";
      if (single.find(c) != std::string::npos) {
        push(Tok::Punct, std::string(1, c), tline, tcol);
        advance(1);
        continue;
      }
      throw ParseError(std::string("unexpected character '") + c + "'", tline,
                       tcol);
    }
    push(Tok::End, "", line, col);
  }

  void push(Tok k, std::string text, int line, int col) {
    tokens_.push_back(Token{k, std::move(text), line, col});
  }

  std::string_view text_;
  std::vector<Token> tokens_;
};

// ---------------------------------------------------------------------------
// Raw syntax tree (names unresolved)
// ---------------------------------------------------------------------------

enum class RK {
  New, Literal, Copy, LoadField, StoreField, LoadArray, StoreArray,
  Binary, Unary, Cast, Invoke, Return, If, Goto, Switch, Throw, Catch,
};

struct RawStmt {
  RK kind;
  int line = 0;
  std::optional<std::string> label;
  // Operand names; roles depend on kind. a is usually the lhs/target var.
  std::string a, b, c;
  Type type;
  Literal lit;
  BinaryOp bop = BinaryOp::Add;
  UnaryOp uop = UnaryOp::Neg;
  CondOp cop = CondOp::Eq;
  InvokeKind ikind = InvokeKind::Static;
  std::vector<std::string> args;
  std::vector<std::pair<int64_t, std::string>> cases;
  std::string defaultLabel;
  std::string target;
  bool hasValue = false;  // Return with value / Invoke with result
};

struct RawCatch {
  Type type;
  std::string startLabel, endLabel, handlerLabel;
  int line = 0;
};

struct RawVarDecl {
  Type type;
  std::string name;
  int line = 0;
};

struct RawMethod {
  bool isStatic = false;
  Type returnType;
  std::string name;
  std::vector<std::pair<Type, std::string>> params;
  bool hasBody = false;
  std::vector<RawVarDecl> decls;
  std::vector<RawStmt> stmts;
  std::vector<RawCatch> catches;
  int line = 0;
};

struct RawField {
  bool isStatic = false;
  Type type;
  std::string name;
  int line = 0;
};

struct RawClass {
  bool isInterface = false;
  std::string name;
  std::optional<std::string> super;
  std::vector<std::string> interfaces;
  std::vector<RawField> fields;
  std::vector<RawMethod> methods;
  int line = 0;
};

// ---------------------------------------------------------------------------
// Syntactic parser
// ---------------------------------------------------------------------------

class SyntaxParser {
 public:
  explicit SyntaxParser(const std::vector<Token>& tokens) : toks_(tokens) {}

  std::vector<RawClass> parseUnit() {
    std::vector<RawClass> classes;
    while (!atEnd()) {
      if (peekIs("class")) {
        classes.push_back(parseClass(false));
      } else if (peekIs("interface")) {
        classes.push_back(parseClass(true));
      } else {
        fail("expected 'class' or 'interface'");
      }
    }
    return classes;
  }

 private:
  const Token& peek(int off = 0) const {
    size_t i = pos_ + off;
    return i < toks_.size() ? toks_[i] : toks_.back();
  }
  bool atEnd() const { return peek().kind == Tok::End; }
  bool peekIs(std::string_view text, int off = 0) const {
    return peek(off).text == text && peek(off).kind != Tok::String;
  }
  const Token& next() { return toks_[pos_++]; }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg + " (got '" + peek().text + "')", peek().line,
                     peek().column);
  }
  void expect(std::string_view text) {
    if (!peekIs(text)) fail("expected '" + std::string(text) + "'");
    next();
  }
  std::string expectIdent() {
    if (peek().kind != Tok::Ident) fail("expected identifier");
    if (reservedWords().count(peek().text))
      fail("'" + peek().text + "' is a reserved word");
    return next().text;
  }

  Type parseType(bool allowVoid = false) {
    Type base;
    if (peekIs("int")) {
      next();
      base = Type::intType();
    } else if (peekIs("boolean")) {
      next();
      base = Type::booleanType();
    } else if (peekIs("void")) {
      if (!allowVoid) fail("'void' is only valid as a return type");
      next();
      return Type::voidType();
    } else {
      base = Type::classType(expectIdent());
    }
    while (peekIs("[") && peekIs("]", 1)) {
      next();
      next();
      base = Type::arrayType(base);
    }
    return base;
  }

  bool peekType() const {
    return peek().kind == Tok::Ident &&
           (peekIs("int") || peekIs("boolean") ||
            !reservedWords().count(peek().text));
  }

  RawClass parseClass(bool isInterface) {
    RawClass cls;
    cls.isInterface = isInterface;
    cls.line = peek().line;
    next();  // class / interface
    cls.name = expectIdent();
    if (peekIs("extends")) {
      next();
      if (isInterface) {
        cls.interfaces.push_back(expectIdent());
        while (peekIs(",")) {
          next();
          cls.interfaces.push_back(expectIdent());
        }
      } else {
        cls.super = expectIdent();
      }
    }
    if (!isInterface && peekIs("implements")) {
      next();
      cls.interfaces.push_back(expectIdent());
      while (peekIs(",")) {
        next();
        cls.interfaces.push_back(expectIdent());
      }
    }
    expect("{");
    while (!peekIs("}")) {
      parseMember(cls);
    }
    expect("}");
    return cls;
  }

  // field:  ["static"] TYPE NAME ";"
  // method: ["static"] TYPE NAME "(" params ")" ("{" body "}" | ";")
  void parseMember(RawClass& cls) {
    int line = peek().line;
    bool isStatic = false;
    if (peekIs("static")) {
      next();
      isStatic = true;
    }
    Type type = parseType(/*allowVoid=*/true);
    std::string name = expectIdent();
    if (peekIs("(")) {
      RawMethod m;
      m.isStatic = isStatic;
      m.returnType = type;
      m.name = name;
      m.line = line;
      next();
      if (!peekIs(")")) {
        for (;;) {
          Type pt = parseType();
          std::string pn = expectIdent();
          m.params.emplace_back(pt, pn);
          if (!peekIs(",")) break;
          next();
        }
      }
      expect(")");
      if (peekIs(";")) {
        next();
        if (!cls.isInterface)
          throw ParseError("class method '" + name + "' must have a body", line,
                           1);
        m.hasBody = false;
      } else {
        if (cls.isInterface)
          throw ParseError("interface method '" + name + "' cannot have a body",
                           line, 1);
        m.hasBody = true;
        parseBody(m);
      }
      cls.methods.push_back(std::move(m));
    } else {
      if (type.isVoid()) fail("field cannot have type void");
      if (cls.isInterface)
        throw ParseError("interfaces cannot declare fields", line, 1);
      expect(";");
      cls.fields.push_back(RawField{isStatic, type, name, line});
    }
  }

  void parseBody(RawMethod& m) {
    expect("{");
    // Leading declarations: TYPE NAME ";"
    while (isDeclStart()) {
      RawVarDecl d;
      d.line = peek().line;
      d.type = parseType();
      d.name = expectIdent();
      expect(";");
      m.decls.push_back(std::move(d));
    }
    bool inCatchTable = false;
    while (!peekIs("}")) {
      if (peekIs("catch") && peekIs("(", 1)) {
        inCatchTable = true;
        m.catches.push_back(parseCatchRow());
        continue;
      }
      if (inCatchTable) fail("statements cannot follow the catch table");
      m.stmts.push_back(parseStmt());
    }
    expect("}");
  }

  // A declaration is TYPE NAME ";" — distinguished from statements by the
  // token after the (possibly array-suffixed) head identifier.
  bool isDeclStart() const {
    if (!peekType()) return false;
    int off = 1;
    while (peekIs("[", off) && peekIs("]", off + 1)) off += 2;
    if (peek(off).kind != Tok::Ident) return false;
    if (reservedWords().count(peek(off).text)) return false;
    return peekIs(";", off + 1);
  }

  RawCatch parseCatchRow() {
    RawCatch row;
    row.line = peek().line;
    expect("catch");
    expect("(");
    row.type = parseType();
    expect(",");
    row.startLabel = expectIdent();
    expect(",");
    row.endLabel = expectIdent();
    expect(",");
    row.handlerLabel = expectIdent();
    expect(")");
    expect(";");
    return row;
  }

  std::optional<BinaryOp> binaryOpHere() const {
    static const std::map<std::string, BinaryOp> ops = {
        {"+", BinaryOp::Add}, {"-", BinaryOp::Sub},  {"*", BinaryOp::Mul},
        {"/", BinaryOp::Div}, {"%", BinaryOp::Rem},  {"==", BinaryOp::Eq},
        {"!=", BinaryOp::Ne}, {"<", BinaryOp::Lt},   {"<=", BinaryOp::Le},
        {">", BinaryOp::Gt},  {">=", BinaryOp::Ge},  {"&&", BinaryOp::And},
        {"||", BinaryOp::Or}};
    if (peek().kind != Tok::Punct) return std::nullopt;
    auto it = ops.find(peek().text);
    return it == ops.end() ? std::nullopt : std::make_optional(it->second);
  }

  CondOp parseCondOp() {
    static const std::map<std::string, CondOp> ops = {
        {"==", CondOp::Eq}, {"!=", CondOp::Ne}, {"<", CondOp::Lt},
        {"<=", CondOp::Le}, {">", CondOp::Gt},  {">=", CondOp::Ge}};
    auto it = peek().kind == Tok::Punct ? ops.find(peek().text) : ops.end();
    if (it == ops.end()) fail("expected relational operator");
    next();
    return it->second;
  }

  int64_t parseIntValue() {
    bool negative = false;
    if (peekIs("-")) {
      next();
      negative = true;
    }
    if (peek().kind != Tok::Int) fail("expected integer");
    int64_t v = std::stoll(next().text);
    return negative ? -v : v;
  }

  RawStmt parseStmt() {
    RawStmt s;
    s.line = peek().line;
    // Optional label.
    if (peek().kind == Tok::Ident && !reservedWords().count(peek().text) &&
        peekIs(":", 1)) {
      s.label = next().text;
      next();  // ':'
    }
    if (peekIs("return")) {
      next();
      s.kind = RK::Return;
      if (!peekIs(";")) {
        s.a = expectIdent();
        s.hasValue = true;
      }
      expect(";");
      return s;
    }
    if (peekIs("if")) {
      next();
      s.kind = RK::If;
      s.a = expectIdent();
      s.cop = parseCondOp();
      s.b = expectIdent();
      expect("goto");
      s.target = expectIdent();
      expect(";");
      return s;
    }
    if (peekIs("goto")) {
      next();
      s.kind = RK::Goto;
      s.target = expectIdent();
      expect(";");
      return s;
    }
    if (peekIs("switch")) {
      next();
      s.kind = RK::Switch;
      s.a = expectIdent();
      expect("{");
      bool sawDefault = false;
      while (!peekIs("}")) {
        if (peekIs("case")) {
          next();
          int64_t v = parseIntValue();
          expect(":");
          std::string label = expectIdent();
          expect(";");
          s.cases.emplace_back(v, label);
        } else if (peekIs("default")) {
          next();
          expect(":");
          s.defaultLabel = expectIdent();
          expect(";");
          sawDefault = true;
        } else {
          fail("expected 'case' or 'default'");
        }
      }
      expect("}");
      expect(";");
      if (!sawDefault)
        throw ParseError("switch requires a default target", s.line, 1);
      return s;
    }
    if (peekIs("throw")) {
      next();
      s.kind = RK::Throw;
      s.a = expectIdent();
      expect(";");
      return s;
    }
    if (peekIs("invokestatic") || peekIs("invokevirtual") ||
        peekIs("invokespecial")) {
      parseInvoke(s, /*result=*/"");
      return s;
    }
    // Statements starting with an identifier.
    std::string head = expectIdent();
    if (peekIs(".")) {
      next();
      std::string field = expectIdent();
      expect("=");
      s.kind = RK::StoreField;
      s.a = head;  // base var or class name
      s.b = field;
      s.c = expectIdent();
      expect(";");
      return s;
    }
    if (peekIs("[")) {
      next();
      expect("*");
      expect("]");
      expect("=");
      s.kind = RK::StoreArray;
      s.a = head;
      s.b = expectIdent();
      expect(";");
      return s;
    }
    expect("=");
    // x = new T; | x = LITERAL; | x = (T) y; | x = @catch;
    // x = invoke...; | x = -5; | x = -y; | x = !y; | x = y...;
    if (peekIs("new")) {
      next();
      s.kind = RK::New;
      Type t = parseType();
      if (peekIs("[") && peekIs("]", 1)) {
        next();
        next();
        t = Type::arrayType(t);
      }
      s.type = t;
      s.a = head;
      expect(";");
      return s;
    }
    if (peek().kind == Tok::Int || peekIs("true") || peekIs("false") ||
        peekIs("null") || peek().kind == Tok::String ||
        (peekIs("-") && peek(1).kind == Tok::Int)) {
      s.kind = RK::Literal;
      s.a = head;
      if (peek().kind == Tok::String) {
        s.lit = Literal::stringValue(next().text);
      } else if (peekIs("true")) {
        next();
        s.lit = Literal::booleanValue(true);
      } else if (peekIs("false")) {
        next();
        s.lit = Literal::booleanValue(false);
      } else if (peekIs("null")) {
        next();
        s.lit = Literal::nullValue();
      } else {
        s.lit = Literal::intValue(parseIntValue());
      }
      expect(";");
      return s;
    }
    if (peekIs("(")) {
      next();
      s.kind = RK::Cast;
      s.a = head;
      s.type = parseType();
      expect(")");
      s.b = expectIdent();
      expect(";");
      return s;
    }
    if (peekIs("@")) {
      next();
      expect("catch");
      s.kind = RK::Catch;
      s.a = head;
      expect(";");
      return s;
    }
    if (peekIs("invokestatic") || peekIs("invokevirtual") ||
        peekIs("invokespecial")) {
      parseInvoke(s, head);
      return s;
    }
    if (peekIs("-") || peekIs("!")) {
      s.kind = RK::Unary;
      s.a = head;
      s.uop = peekIs("-") ? UnaryOp::Neg : UnaryOp::Not;
      next();
      s.b = expectIdent();
      expect(";");
      return s;
    }
    std::string rhs = expectIdent();
    if (peekIs(".")) {
      next();
      s.kind = RK::LoadField;
      s.a = head;
      s.b = rhs;
      s.c = expectIdent();
      expect(";");
      return s;
    }
    if (peekIs("[")) {
      next();
      expect("*");
      expect("]");
      s.kind = RK::LoadArray;
      s.a = head;
      s.b = rhs;
      expect(";");
      return s;
    }
    if (auto op = binaryOpHere()) {
      next();
      s.kind = RK::Binary;
      s.a = head;
      s.bop = *op;
      s.b = rhs;
      s.c = expectIdent();
      expect(";");
      return s;
    }
    s.kind = RK::Copy;
    s.a = head;
    s.b = rhs;
    expect(";");
    return s;
  }

  void parseInvoke(RawStmt& s, const std::string& result) {
    s.kind = RK::Invoke;
    s.a = result;
    s.hasValue = !result.empty();
    s.ikind = peekIs("invokestatic")   ? InvokeKind::Static
              : peekIs("invokevirtual") ? InvokeKind::Virtual
                                        : InvokeKind::Special;
    next();
    s.b = expectIdent();  // base var or class name
    expect(".");
    s.c = expectIdent();  // method name
    expect("(");
    if (!peekIs(")")) {
      for (;;) {
        s.args.push_back(expectIdent());
        if (!peekIs(",")) break;
        next();
      }
    }
    expect(")");
    expect(";");
  }

  const std::vector<Token>& toks_;
  size_t pos_ = 0;
};

}  // namespace

// ---------------------------------------------------------------------------
// Semantic build: resolve names, validate, produce the immutable model.
// ---------------------------------------------------------------------------

class ProgramBuilder {
 public:
  std::unique_ptr<Program> build(std::vector<RawClass> raw) {
    program_ = std::make_unique<Program>();
    addBuiltins();
    declareClasses(raw);
    resolveSupertypes(raw);
    checkInheritanceCycles();
    declareMembers(raw);
    program_->hierarchy_ = std::make_unique<Hierarchy>(*program_);
    buildBodies(raw);
    collectEntryMethods();
    return std::move(program_);
  }

 private:
  [[noreturn]] static void fail(const std::string& msg, int line) {
    throw ParseError(msg, line, 1);
  }

  ClassDecl* addClass(const std::string& name, bool isInterface, bool builtin,
                      int line) {
    if (program_->classByName_.count(name))
      fail("duplicate class name '" + name + "'", line);
    auto cls = std::make_unique<ClassDecl>();
    cls->name_ = name;
    cls->isInterface_ = isInterface;
    cls->isBuiltin_ = builtin;
    ClassDecl* ptr = cls.get();
    program_->classes_.push_back(std::move(cls));
    program_->classList_.push_back(ptr);
    program_->classByName_[name] = ptr;
    return ptr;
  }

  void addBuiltins() {
    ClassDecl* object = addClass(builtin::kObject, false, true, 0);
    auto derived = [&](const char* name, ClassDecl* super) {
      ClassDecl* c = addClass(name, false, true, 0);
      c->superclass_ = super;
      return c;
    };
    derived(builtin::kString, object);
    ClassDecl* throwable = derived(builtin::kThrowable, object);
    derived(builtin::kArithmeticException, throwable);
    derived(builtin::kIndexOutOfBoundsException, throwable);
    derived(builtin::kClassCastException, throwable);
    derived(builtin::kNullPointerException, throwable);
  }

  void declareClasses(const std::vector<RawClass>& raw) {
    for (const RawClass& rc : raw) {
      ClassDecl* c = addClass(rc.name, rc.isInterface, false, rc.line);
      rawOf_[c] = &rc;
    }
  }

  const ClassDecl* requireClass(const std::string& name, int line) const {
    const ClassDecl* c = program_->classByName(name);
    if (!c) fail("unresolved class '" + name + "'", line);
    return c;
  }

  void resolveSupertypes(const std::vector<RawClass>& raw) {
    const ClassDecl* object = program_->classByName(builtin::kObject);
    for (const RawClass& rc : raw) {
      ClassDecl* c = mutableClass(rc.name);
      if (!rc.isInterface) {
        const ClassDecl* super =
            rc.super ? requireClass(*rc.super, rc.line) : object;
        if (super->isInterface())
          fail("class '" + rc.name + "' cannot extend interface '" +
                   super->name() + "'",
               rc.line);
        c->superclass_ = super;
      }
      for (const std::string& iname : rc.interfaces) {
        const ClassDecl* iface = requireClass(iname, rc.line);
        if (!iface->isInterface())
          fail("'" + iname + "' is not an interface", rc.line);
        c->interfaces_.push_back(iface);
      }
    }
  }

  void checkInheritanceCycles() const {
    // Colors: 0 unvisited, 1 on stack, 2 done.
    std::map<const ClassDecl*, int> color;
    for (const ClassDecl* c : program_->classList_) {
      visitForCycle(c, color);
    }
  }

  void visitForCycle(const ClassDecl* c,
                     std::map<const ClassDecl*, int>& color) const {
    int& state = color[c];
    if (state == 2) return;
    if (state == 1) fail("inheritance cycle involving '" + c->name() + "'", 0);
    state = 1;
    if (c->superclass()) visitForCycle(c->superclass(), color);
    for (const ClassDecl* i : c->interfaces()) visitForCycle(i, color);
    color[c] = 2;
  }

  void checkTypeResolves(const Type& t, int line) const {
    if (t.isClass()) requireClass(t.className(), line);
    if (t.isArray()) checkTypeResolves(t.element(), line);
  }

  void declareMembers(const std::vector<RawClass>& raw) {
    for (const RawClass& rc : raw) {
      ClassDecl* c = mutableClass(rc.name);
      for (const RawField& rf : rc.fields) {
        if (c->findField(rf.name))
          fail("duplicate field '" + rf.name + "' in class '" + rc.name + "'",
               rf.line);
        checkTypeResolves(rf.type, rf.line);
        c->fields_.push_back(FieldDecl{rf.name, rf.type, rf.isStatic, c});
      }
      for (const RawMethod& rm : rc.methods) {
        // Method names are unique per class: invoke statements reference
        // methods by name alone, so overloading is not expressible.
        if (c->findMethod(rm.name))
          fail("duplicate method '" + rm.name + "' in class '" + rc.name + "'",
               rm.line);
        checkTypeResolves(rm.returnType, rm.line);
        auto m = std::make_unique<MethodDecl>();
        m->owner_ = c;
        m->name_ = rm.name;
        m->isStatic_ = rm.isStatic;
        m->isAbstract_ = !rm.hasBody;
        m->returnType_ = rm.returnType;
        std::set<std::string> paramNames;
        for (const auto& [pt, pn] : rm.params) {
          checkTypeResolves(pt, rm.line);
          if (!paramNames.insert(pn).second)
            fail("duplicate parameter '" + pn + "'", rm.line);
          m->paramTypes_.push_back(pt);
          m->paramNames_.push_back(pn);
        }
        if (rm.isStatic && rc.isInterface)
          fail("interface methods cannot be static", rm.line);
        c->methods_.push_back(std::move(m));
      }
    }
  }

  void buildBodies(const std::vector<RawClass>& raw) {
    for (const RawClass& rc : raw) {
      ClassDecl* c = mutableClass(rc.name);
      for (size_t mi = 0; mi < rc.methods.size(); ++mi) {
        const RawMethod& rm = rc.methods[mi];
        if (!rm.hasBody) continue;
        MethodDecl* m = c->methods_[mi].get();
        m->body_ = std::make_unique<MethodBody>();
        buildBody(*m, rm);
      }
    }
  }

  void buildBody(MethodDecl& m, const RawMethod& rm) {
    MethodBody& body = *m.body_;
    body.method_ = &m;

    std::map<std::string, const Var*> varByName;
    auto addVar = [&](const std::string& name, const Type& type,
                      int line) -> const Var* {
      if (varByName.count(name))
        fail("duplicate variable '" + name + "'", line);
      body.varStorage_.push_back(
          Var{name, type, static_cast<int>(body.varStorage_.size()), &m});
      const Var* v = &body.varStorage_.back();
      body.vars_.push_back(v);
      varByName[name] = v;
      return v;
    };

    if (!m.isStatic()) {
      body.thisVar_ = addVar("this", Type::classType(m.owner().name()), rm.line);
    }
    for (size_t i = 0; i < m.paramTypes().size(); ++i) {
      body.params_.push_back(
          addVar(m.paramNames()[i], m.paramTypes()[i], rm.line));
    }
    for (const RawVarDecl& d : rm.decls) {
      checkTypeResolves(d.type, d.line);
      if (d.type.isVoid()) fail("variable cannot have type void", d.line);
      addVar(d.name, d.type, d.line);
    }

    // Label table.
    std::map<std::string, int> labels;
    for (size_t i = 0; i < rm.stmts.size(); ++i) {
      if (rm.stmts[i].label) {
        if (!labels.emplace(*rm.stmts[i].label, static_cast<int>(i)).second)
          fail("duplicate label '" + *rm.stmts[i].label + "'",
               rm.stmts[i].line);
      }
    }
    auto resolveLabel = [&](const std::string& name, int line) -> int {
      auto it = labels.find(name);
      if (it == labels.end()) fail("undefined label '" + name + "'", line);
      return it->second;
    };
    auto var = [&](const std::string& name, int line) -> const Var* {
      auto it = varByName.find(name);
      if (it == varByName.end())
        fail("undeclared variable '" + name + "'", line);
      return it->second;
    };
    auto varOrNull = [&](const std::string& name) -> const Var* {
      auto it = varByName.find(name);
      return it == varByName.end() ? nullptr : it->second;
    };
    const Hierarchy& h = *program_->hierarchy_;

    // A field access `B.f` is an instance access when B names a variable and
    // a static access when it names a class; variables shadow class names.
    auto makeFieldRef = [&](const std::string& baseName,
                            const std::string& fieldName, int line,
                            const Var** baseOut) -> FieldRef {
      if (const Var* base = varOrNull(baseName)) {
        if (!base->type.isClass())
          fail("field access on non-class-typed variable '" + baseName + "'",
               line);
        auto [owner, field] =
            h.tryResolveField(base->type.className(), fieldName);
        if (!field)
          fail("unresolved field '" + fieldName + "' on class '" +
                   base->type.className() + "'",
               line);
        if (field->isStatic)
          fail("instance access to static field '" + fieldName + "'", line);
        *baseOut = base;
        return FieldRef{base->type.className(), fieldName, false, field};
      }
      if (program_->classByName(baseName)) {
        auto [owner, field] = h.tryResolveField(baseName, fieldName);
        if (!field)
          fail("unresolved field '" + fieldName + "' on class '" + baseName +
                   "'",
               line);
        if (!field->isStatic)
          fail("static access to instance field '" + fieldName + "'", line);
        *baseOut = nullptr;
        return FieldRef{baseName, fieldName, true, field};
      }
      fail("undeclared variable '" + baseName + "'", line);
    };

    body.stmts_.reserve(rm.stmts.size());
    for (size_t i = 0; i < rm.stmts.size(); ++i) {
      const RawStmt& rs = rm.stmts[i];
      Stmt out;
      out.index = static_cast<int>(i);
      out.line = rs.line;
      switch (rs.kind) {
        case RK::New: {
          checkTypeResolves(rs.type, rs.line);
          if (rs.type.isClass()) {
            const ClassDecl* c = requireClass(rs.type.className(), rs.line);
            if (c->isInterface())
              fail("cannot instantiate interface '" + c->name() + "'", rs.line);
          }
          out.data = New{var(rs.a, rs.line), rs.type, nextAllocId_++};
          break;
        }
        case RK::Literal:
          out.data = AssignLiteral{var(rs.a, rs.line), rs.lit};
          break;
        case RK::Copy:
          out.data = Copy{var(rs.a, rs.line), var(rs.b, rs.line)};
          break;
        case RK::LoadField: {
          const Var* base = nullptr;
          FieldRef ref = makeFieldRef(rs.b, rs.c, rs.line, &base);
          out.data = LoadField{var(rs.a, rs.line), base, std::move(ref)};
          break;
        }
        case RK::StoreField: {
          const Var* base = nullptr;
          FieldRef ref = makeFieldRef(rs.a, rs.b, rs.line, &base);
          out.data = StoreField{base, std::move(ref), var(rs.c, rs.line)};
          break;
        }
        case RK::LoadArray: {
          const Var* base = var(rs.b, rs.line);
          if (!base->type.isArray())
            fail("array access on non-array variable '" + rs.b + "'", rs.line);
          out.data = LoadArray{var(rs.a, rs.line), base};
          break;
        }
        case RK::StoreArray: {
          const Var* base = var(rs.a, rs.line);
          if (!base->type.isArray())
            fail("array access on non-array variable '" + rs.a + "'", rs.line);
          out.data = StoreArray{base, var(rs.b, rs.line)};
          break;
        }
        case RK::Binary:
          out.data = Binary{var(rs.a, rs.line), rs.bop, var(rs.b, rs.line),
                            var(rs.c, rs.line)};
          break;
        case RK::Unary:
          out.data = Unary{var(rs.a, rs.line), rs.uop, var(rs.b, rs.line)};
          break;
        case RK::Cast:
          checkTypeResolves(rs.type, rs.line);
          out.data = Cast{var(rs.a, rs.line), rs.type, var(rs.b, rs.line)};
          break;
        case RK::Invoke:
          out.data = buildInvoke(rs, var, varOrNull);
          break;
        case RK::Return: {
          const Var* value = rs.hasValue ? var(rs.a, rs.line) : nullptr;
          if (m.returnType().isVoid() && value)
            fail("void method cannot return a value", rs.line);
          if (!m.returnType().isVoid() && !value)
            fail("non-void method must return a value", rs.line);
          out.data = Return{value};
          break;
        }
        case RK::If:
          out.data = If{rs.cop, var(rs.a, rs.line), var(rs.b, rs.line),
                        resolveLabel(rs.target, rs.line)};
          break;
        case RK::Goto:
          out.data = Goto{resolveLabel(rs.target, rs.line)};
          break;
        case RK::Switch: {
          Switch sw;
          sw.key = var(rs.a, rs.line);
          for (const auto& [v, label] : rs.cases)
            sw.cases.emplace_back(v, resolveLabel(label, rs.line));
          sw.defaultTarget = resolveLabel(rs.defaultLabel, rs.line);
          out.data = std::move(sw);
          break;
        }
        case RK::Throw: {
          const Var* v = var(rs.a, rs.line);
          if (!v->type.isClass() ||
              !h.isSubtype(v->type, Type::classType(builtin::kThrowable)))
            fail("thrown variable '" + rs.a + "' must have a Throwable type",
                 rs.line);
          out.data = Throw{v};
          break;
        }
        case RK::Catch:
          out.data = Catch{var(rs.a, rs.line)};
          break;
      }
      body.stmts_.push_back(std::move(out));
    }

    // Exception table.
    for (const RawCatch& rc : rm.catches) {
      checkTypeResolves(rc.type, rc.line);
      if (!rc.type.isClass() ||
          !h.isSubtype(rc.type, Type::classType(builtin::kThrowable)))
        fail("catch type must be a Throwable class", rc.line);
      int start = resolveLabel(rc.startLabel, rc.line);
      int end = resolveLabel(rc.endLabel, rc.line);
      int handler = resolveLabel(rc.handlerLabel, rc.line);
      if (start >= end)
        fail("empty or inverted try range in catch table", rc.line);
      if (!body.stmts_[handler].is<Catch>())
        fail("catch handler must point at an 'x = @catch' statement", rc.line);
      body.handlers_.push_back(
          MethodBody::Handler{start, end, handler, rc.type});
    }

    // Precompute per-variable relevant statements.
    body.relevant_.resize(body.vars_.size());
    for (const Stmt& s : body.stmts_) {
      if (const auto* l = s.as<LoadField>()) {
        if (l->base) body.relevant_[l->base->index].fieldLoads.push_back(&s);
      } else if (const auto* st = s.as<StoreField>()) {
        if (st->base) body.relevant_[st->base->index].fieldStores.push_back(&s);
      } else if (const auto* la = s.as<LoadArray>()) {
        body.relevant_[la->base->index].arrayLoads.push_back(&s);
      } else if (const auto* sa = s.as<StoreArray>()) {
        body.relevant_[sa->base->index].arrayStores.push_back(&s);
      } else if (const auto* inv = s.as<Invoke>()) {
        if (inv->base) body.relevant_[inv->base->index].invokes.push_back(&s);
      } else if (const auto* cp = s.as<Copy>()) {
        body.relevant_[cp->rhs->index].copiesFrom.push_back(&s);
      }
    }
  }

  template <typename VarFn, typename VarOrNullFn>
  Invoke buildInvoke(const RawStmt& rs, VarFn& var, VarOrNullFn& varOrNull) {
    const Hierarchy& h = *program_->hierarchy_;
    Invoke inv;
    inv.kind = rs.ikind;
    inv.result = rs.hasValue ? var(rs.a, rs.line) : nullptr;
    std::string className;
    if (rs.ikind == InvokeKind::Static) {
      if (!program_->classByName(rs.b))
        fail("unresolved class '" + rs.b + "' in static call", rs.line);
      className = rs.b;
      inv.base = nullptr;
    } else {
      const Var* base = varOrNull(rs.b);
      if (!base) fail("undeclared variable '" + rs.b + "'", rs.line);
      if (!base->type.isClass())
        fail("cannot invoke a method on non-class-typed variable '" + rs.b +
                 "'",
             rs.line);
      className = base->type.className();
      inv.base = base;
    }
    const MethodDecl* resolved = h.resolveMethod(className, rs.c);
    if (!resolved)
      fail("unresolved method '" + rs.c + "' from class '" + className + "'",
           rs.line);
    if (rs.ikind == InvokeKind::Static && !resolved->isStatic())
      fail("invokestatic targets instance method '" + rs.c + "'", rs.line);
    if (rs.ikind != InvokeKind::Static && resolved->isStatic())
      fail("instance call targets static method '" + rs.c + "'", rs.line);
    if (rs.args.size() != resolved->paramTypes().size())
      fail("call to '" + resolved->signature() + "' passes " +
               std::to_string(rs.args.size()) + " arguments",
           rs.line);
    for (const std::string& a : rs.args) inv.args.push_back(var(a, rs.line));
    inv.method = MethodRef{className, rs.c, resolved};
    return inv;
  }

  void collectEntryMethods() {
    for (const ClassDecl* c : program_->classList_) {
      for (const auto& m : c->methods()) {
        if (m->isStatic() && m->name() == "main")
          program_->entryMethods_.push_back(m.get());
      }
    }
  }

  ClassDecl* mutableClass(const std::string& name) {
    return const_cast<ClassDecl*>(program_->classByName(name));
  }

  std::unique_ptr<Program> program_;
  std::map<const ClassDecl*, const RawClass*> rawOf_;
  int nextAllocId_ = 0;
};

std::unique_ptr<Program> parseProgram(std::string_view text) {
  Lexer lexer(text);
  SyntaxParser syntax(lexer.tokens());
  std::vector<RawClass> raw = syntax.parseUnit();
  ProgramBuilder builder;
  return builder.build(std::move(raw));
}

}  // namespace spa::ir
