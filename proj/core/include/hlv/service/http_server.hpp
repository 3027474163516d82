#pragma once

#include <memory>
#include <string>

#include "hlv/service/annotation_service.hpp"

namespace hlv::service {

/// JSON endpoints over an AnnotationService:
///   POST /sessions                    {annotator_id, workload} -> session
///   GET  /sessions/{token}/next       -> {image_id, png_base64, index, total} | {done: true}
///   POST /sessions/{token}/judgments  {image_id, judgments: {"0".."9"}, client_timestamp}
///   GET  /export?exclude_failed=bool  -> annotation JSONL
///   GET  /health, GET /instructions
class HttpServer {
 public:
  explicit HttpServer(AnnotationService& service);
  ~HttpServer();
  HttpServer(const HttpServer&) = delete;
  HttpServer& operator=(const HttpServer&) = delete;

  /// Binds to `port` (0 picks a free one) and returns the bound port, or -1.
  int bind(const std::string& host, int port);
  /// Serves until stop(); call after bind().
  bool serve();
  void stop();
  bool running() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

}  // namespace hlv::service
