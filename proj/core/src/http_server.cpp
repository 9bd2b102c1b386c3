#include <httplib.h>

#include "collapsi/service.hpp"

namespace collapsi {

namespace {

void send_json(httplib::Response& res, int status, const nlohmann::json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

nlohmann::json parse_body(const httplib::Request& req) {
  if (req.body.empty()) return nlohmann::json::object();
  try {
    auto body = nlohmann::json::parse(req.body);
    if (!body.is_object()) throw ServiceError(400, "bad_request", "request body must be a JSON object");
    return body;
  } catch (const nlohmann::json::parse_error& e) {
    throw ServiceError(400, "bad_request", std::string("invalid JSON: ") + e.what());
  }
}

Move move_from_json(const nlohmann::json& body) {
  if (!body.contains("dest")) throw ServiceError(400, "bad_request", "missing 'dest'");
  Move m;
  m.dest = coord_from_json(body.at("dest"));
  if (body.contains("path")) {
    if (!body.at("path").is_array()) throw ServiceError(400, "bad_request", "'path' must be an array");
    for (const auto& c : body.at("path")) m.path.push_back(coord_from_json(c));
  }
  return m;
}

template <typename Fn>
httplib::Server::Handler guarded(Fn fn) {
  return [fn](const httplib::Request& req, httplib::Response& res) {
    try {
      fn(req, res);
    } catch (const ServiceError& e) {
      send_json(res, e.status(), to_json(e));
    } catch (const std::exception& e) {
      send_json(res, 500, {{"code", "internal"}, {"message", e.what()}});
    }
  };
}

}  // namespace

struct HttpServer::Impl {
  GameService& service;
  httplib::Server server;

  explicit Impl(GameService& s) : service(s) {
    server.set_default_headers({{"Access-Control-Allow-Origin", "*"},
                                {"Access-Control-Allow-Methods", "GET, POST, OPTIONS"},
                                {"Access-Control-Allow-Headers", "Content-Type"}});
    server.Options(R"(/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.Post("/games", guarded([this](const httplib::Request& req, httplib::Response& res) {
      const auto body = parse_body(req);
      std::optional<std::string> deal;
      std::optional<std::uint64_t> seed;
      try {
        if (body.contains("deal") && !body["deal"].is_null()) deal = body["deal"].get<std::string>();
        if (body.contains("seed") && !body["seed"].is_null()) seed = body["seed"].get<std::uint64_t>();
      } catch (const nlohmann::json::exception& e) {
        throw ServiceError(400, "bad_request", e.what());
      }
      send_json(res, 201, to_json(service.create_game(deal, seed)));
    }));
    server.Get(R"(/games/([^/]+))", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, to_json(service.get(req.matches[1])));
    }));
    server.Post(R"(/games/([^/]+)/moves)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, to_json(service.play_move(req.matches[1], move_from_json(parse_body(req)))));
    }));
    server.Post(R"(/games/([^/]+)/engine-move)",
                guarded([this](const httplib::Request& req, httplib::Response& res) {
                  send_json(res, 200, to_json(service.engine_move(req.matches[1])));
                }));
    server.Post(R"(/games/([^/]+)/undo)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, to_json(service.undo(req.matches[1])));
    }));
    server.Get(R"(/games/([^/]+)/analysis)", guarded([this](const httplib::Request& req, httplib::Response& res) {
      send_json(res, 200, to_json(service.analysis(req.matches[1])));
    }));
  }
};

HttpServer::HttpServer(GameService& service) : impl_(std::make_unique<Impl>(service)) {}

HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  const int bound = port == 0 ? impl_->server.bind_to_any_port(host) : (impl_->server.bind_to_port(host, port) ? port : -1);
  if (bound < 0) throw IoError("cannot bind " + host + ":" + std::to_string(port));
  return bound;
}

void HttpServer::listen() { impl_->server.listen_after_bind(); }

void HttpServer::stop() {
  if (impl_) impl_->server.stop();
}

}  // namespace collapsi
