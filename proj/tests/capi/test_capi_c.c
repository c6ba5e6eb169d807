// Copyright 2026 The Folio Authors
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

/* Compiles the public header as C and exercises a few calls. */
#include <folio/folio.h>

#include <stdio.h>
#include <string.h>

static int failures = 0;

static void expect(int ok, const char* what) {
  if (!ok) {
    fprintf(stderr, "FAILED: %s\n", what);
    ++failures;
  }
}

int main(void) {
  folio_config* cfg = NULL;
  char* json = NULL;
  char* name = NULL;
  folio_page* page = NULL;

  expect(strlen(folio_version()) > 0, "version");
  expect(strcmp(folio_status_name(FOLIO_ERR_NOT_FOUND), "NotFound") == 0, "status name");

  expect(folio_config_default(&cfg) == FOLIO_OK, "default config");
  expect(folio_config_to_json(cfg, &json) == FOLIO_OK, "config json");
  expect(json != NULL && strstr(json, "binarize") != NULL, "config json content");
  folio_string_free(json);
  folio_config_free(cfg);

  expect(folio_page_name(3, &name) == FOLIO_OK && strcmp(name, "p0003") == 0, "page name");
  folio_string_free(name);

  expect(folio_page_from_json("[]", &page) == FOLIO_ERR_SCHEMA, "schema error");
  expect(page == NULL, "no handle on failure");
  expect(strlen(folio_last_error()) > 0, "last error");

  if (failures == 0) printf("ok\n");
  return failures == 0 ? 0 : 1;
}
