#include "gdist/config.hpp"

#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <sstream>

#include "gdist/errors.hpp"
#include "gdist/zoo.hpp"

namespace gdist {

namespace {

using nlohmann::json;

std::vector<std::string> alphabet_names(const json& j) {
  if (!j.contains("alphabet")) throw ParseError("group config needs an alphabet");
  return j.at("alphabet").get<std::vector<std::string>>();
}

mpz_class integer(const json& v) {
  if (v.is_number_integer()) return mpz_class(std::to_string(v.get<long long>()));
  if (!v.is_string()) throw ParseError("matrix entries must be decimal integer strings");
  mpz_class out;
  if (out.set_str(v.get<std::string>(), 10) != 0)
    throw ParseError("bad integer '" + v.get<std::string>() + "'");
  return out;
}

mpq_class rational(const json& v) {
  if (v.is_number_integer()) return mpq_class(mpz_class(std::to_string(v.get<long long>())));
  if (!v.is_string()) throw ParseError("rationals must be strings like \"3/4\"");
  mpq_class out;
  if (out.set_str(v.get<std::string>(), 10) != 0) throw ParseError("bad rational '" + v.get<std::string>() + "'");
  out.canonicalize();
  return out;
}

const json& marking_of(const json& j, const std::string& name) {
  const json& m = j.at("marking");
  if (!m.contains(name)) throw ParseError("marking has no entry for generator '" + name + "'");
  return m.at(name);
}

MarkedGroup build(const json& j);

MarkedGroup group_from(const json& j) {
  if (j.is_string()) return zoo_group(j.get<std::string>());
  return build(j);
}

MarkedGroup build(const json& j) {
  if (!j.is_object()) throw ParseError("group config must be a JSON object");
  if (j.contains("zoo")) return zoo_group(j.at("zoo").get<std::string>());
  const std::string kind = j.at("kind").get<std::string>();
  const std::string name = j.value("name", kind);

  if (kind == "product") {
    std::vector<MarkedGroup> factors;
    for (const auto& f : j.at("factors")) factors.push_back(group_from(f));
    return direct_product(factors, name);
  }

  Alphabet alphabet(alphabet_names(j));
  std::shared_ptr<const GroupModel> model;
  std::vector<Element> marking;

  if (kind == "table") {
    auto table = j.at("table").get<std::vector<std::vector<std::uint32_t>>>();
    auto t = std::make_shared<TableGroup>(std::move(table));
    for (const auto& n : alphabet.names()) marking.push_back(t->element(marking_of(j, n).get<std::uint32_t>()));
    model = t;
  } else if (kind == "matrix") {
    std::optional<std::shared_ptr<IntegerMatrixGroup>> m;
    for (const auto& n : alphabet.names()) {
      const json& rows = marking_of(j, n);
      const std::size_t dim = rows.size();
      if (!m) m = std::make_shared<IntegerMatrixGroup>(j.value("dimension", dim));
      IntegerMatrixGroup::Matrix entries;
      for (const auto& row : rows) {
        if (row.size() != dim) throw ParseError("matrix for '" + n + "' is not square");
        for (const auto& v : row) entries.push_back(integer(v));
      }
      marking.push_back((*m)->element(entries));
    }
    if (!m) m = std::make_shared<IntegerMatrixGroup>(j.value("dimension", std::size_t{2}));
    model = *m;
  } else if (kind == "dyadic_affine") {
    auto d = std::make_shared<DyadicAffineGroup>();
    for (const auto& n : alphabet.names()) {
      const json& v = marking_of(j, n);
      marking.push_back(d->element({v.at("k").get<std::int64_t>(), rational(v.at("m"))}));
    }
    model = d;
  } else if (kind == "free") {
    Alphabet basis = j.contains("basis") ? Alphabet(j.at("basis").get<std::vector<std::string>>()) : alphabet;
    auto f = std::make_shared<FreeGroup>(static_cast<std::uint32_t>(basis.generator_count()));
    for (std::uint32_t i = 0; i < alphabet.generator_count(); ++i) {
      Word w = j.contains("marking") ? parse_word(marking_of(j, alphabet.name(i)).get<std::string>(), basis)
                                     : Word::generator(i);
      marking.push_back(f->element(w));
    }
    model = f;
  } else if (kind == "braid") {
    const auto strands = j.at("strands").get<std::uint32_t>();
    auto b = std::make_shared<BraidGroup>(strands);
    std::vector<std::string> sigma_names;
    for (std::uint32_t i = 1; i < strands; ++i) sigma_names.push_back("s" + std::to_string(i));
    Alphabet sigmas(sigma_names);
    for (const auto& n : alphabet.names()) {
      Word w = parse_word(marking_of(j, n).get<std::string>(), sigmas);
      Element e = b->identity();
      for (Letter l : w) {
        Element s = b->sigma(l.generator + 1);
        e = b->multiply(e, l.inverse ? b->invert(s) : s);
      }
      marking.push_back(e);
    }
    model = b;
  } else {
    throw ParseError("unknown group kind '" + kind + "'");
  }

  std::optional<Presentation> presentation;
  if (j.contains("presentation")) {
    std::vector<Word> relators;
    for (const auto& r : j.at("presentation").at("relators"))
      relators.push_back(reduce(parse_word(r.get<std::string>(), alphabet)));
    presentation = Presentation(alphabet, std::move(relators));
  }
  return MarkedGroup(name, model, alphabet, std::move(marking), std::move(presentation));
}

template <typename F>
auto guarded(F&& f) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string("config: ") + e.what());
  }
}

}  // namespace

MarkedGroup parse_group_config(std::string_view json_text) {
  return guarded([&] { return build(json::parse(json_text)); });
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot read '" + path + "'");
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

MarkedGroup resolve_group(const std::string& name_or_path) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(name_or_path, ec)) return parse_group_config(read_text_file(name_or_path));
  return zoo_group(name_or_path);
}

LiftData parse_lift_data(std::string_view json_text) {
  return guarded([&] {
    json j = json::parse(json_text);
    MarkedGroup source = group_from(j.at("source"));
    MarkedGroup target = zoo_group(j.at("target").get<std::string>());
    std::vector<Word> images;
    const json& im = j.at("images");
    for (const auto& n : source.alphabet().names()) {
      if (!im.contains(n)) throw ParseError("images have no entry for generator '" + n + "'");
      images.push_back(target.parse(im.at(n).get<std::string>()));
    }
    const std::string jt = j.at("J").get<std::string>();
    LiftData out{source, target, std::move(images), target.element(jt), jt, j.value("radius", std::size_t{4}),
                 std::nullopt, j.value("expect", std::string("pass")) == "pass"};
    if (j.contains("surface")) out.surface = SurfaceSig::parse(j.at("surface").get<std::string>());
    return out;
  });
}

}  // namespace gdist
