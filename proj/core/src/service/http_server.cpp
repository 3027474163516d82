#include "hlv/service/http_server.hpp"

#include <httplib.h>
#include <json.hpp>

#include "hlv/common/io.hpp"

namespace hlv::service {

using nlohmann::json;

namespace {

void send_json(httplib::Response& res, int status, const json& body) {
  res.status = status;
  res.set_content(body.dump(), "application/json");
}

void send_error(httplib::Response& res, int status, const std::string& message) {
  send_json(res, status, json{{"error", message}});
}

int status_of(ServiceError::Kind kind) {
  switch (kind) {
    case ServiceError::Kind::BadRequest: return 400;
    case ServiceError::Kind::NotFound: return 404;
    case ServiceError::Kind::Conflict: return 409;
  }
  return 400;
}

template <typename Fn>
void guarded(httplib::Response& res, Fn&& fn) {
  try {
    fn();
  } catch (const ServiceError& e) {
    send_error(res, status_of(e.kind()), e.what());
  } catch (const json::exception& e) {
    send_error(res, 400, std::string("malformed request: ") + e.what());
  } catch (const std::invalid_argument& e) {
    send_error(res, 400, e.what());
  } catch (const std::exception& e) {
    send_error(res, 500, e.what());
  }
}

json session_json(const Session& s) {
  return json{{"token", s.token},
              {"annotator_id", s.annotator_id},
              {"total", s.tasks.size()},
              {"completed", s.completed()},
              {"failed_gold", s.failed_gold}};
}

std::array<annotation::Judgment, kNumDigits> parse_judgment_map(const json& j) {
  if (!j.is_object()) throw std::invalid_argument("judgments must be an object");
  if (j.size() != kNumDigits) throw std::invalid_argument("judgments must hold exactly the keys 0-9");
  std::array<annotation::Judgment, kNumDigits> out{};
  for (std::size_t d = 0; d < kNumDigits; ++d) {
    const auto key = std::to_string(d);
    if (!j.contains(key) || !j.at(key).is_string()) throw std::invalid_argument("judgment for digit " + key + " missing");
    out[d] = annotation::parse_judgment(j.at(key).get<std::string>());
  }
  return out;
}

}  // namespace

struct HttpServer::Impl {
  AnnotationService& service;
  httplib::Server server;

  explicit Impl(AnnotationService& s) : service(s) {
    server.Get("/health", [this](const httplib::Request&, httplib::Response& res) {
      send_json(res, 200, json{{"status", "ok"}, {"sessions", service.session_count()},
                               {"judgments", service.judgment_count()}, {"pool", service.pool_size()}});
    });
    server.Get("/instructions", [](const httplib::Request&, httplib::Response& res) {
      res.set_content(instructions_json(), "application/json");
    });
    server.Post("/sessions", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto body = json::parse(req.body);
        const auto& s = service.create_session(body.at("annotator_id").get<std::string>(),
                                               body.at("workload").get<std::size_t>());
        send_json(res, 201, session_json(s));
      });
    });
    server.Get(R"(/sessions/([0-9a-f]+)/next)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto task = service.next(req.matches[1]);
        if (!task) {
          send_json(res, 200, json{{"done", true}});
          return;
        }
        send_json(res, 200, json{{"image_id", task->image_id}, {"png_base64", base64_encode(task->png)},
                                 {"index", task->index}, {"total", task->total}});
      });
    });
    server.Post(R"(/sessions/([0-9a-f]+)/judgments)", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        const auto body = json::parse(req.body);
        const auto judgments = parse_judgment_map(body.at("judgments"));
        const auto ack = service.submit(req.matches[1], body.at("image_id").get<std::string>(), judgments,
                                        body.value("client_timestamp", std::string{}));
        send_json(res, 200, json{{"accepted", ack.accepted}, {"gold_failed", ack.gold_failed}});
      });
    });
    server.Get("/export", [this](const httplib::Request& req, httplib::Response& res) {
      guarded(res, [&] {
        bool exclude = false;
        if (req.has_param("exclude_failed")) {
          const auto v = req.get_param_value("exclude_failed");
          if (v == "true" || v == "1") {
            exclude = true;
          } else if (v != "false" && v != "0") {
            throw std::invalid_argument("exclude_failed must be true or false");
          }
        }
        res.set_content(service.export_jsonl(exclude), "application/x-ndjson");
      });
    });
  }
};

HttpServer::HttpServer(AnnotationService& service) : impl_(std::make_unique<Impl>(service)) {}
HttpServer::~HttpServer() { stop(); }

int HttpServer::bind(const std::string& host, int port) {
  if (port == 0) return impl_->server.bind_to_any_port(host);
  return impl_->server.bind_to_port(host, port) ? port : -1;
}

bool HttpServer::serve() { return impl_->server.listen_after_bind(); }
void HttpServer::stop() { impl_->server.stop(); }
bool HttpServer::running() const { return impl_->server.is_running(); }

}  // namespace hlv::service
