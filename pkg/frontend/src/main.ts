/** Browser entry point: real HTTP client plus a file picker backed by a
 * hidden <input type="file"> element. */

import { ApiClient } from "./api.js";
import { createApp } from "./app.js";
import type { FilePicker } from "./types.js";

const browserFilePicker: FilePicker = () =>
  new Promise((resolve) => {
    const input = document.createElement("input");
    input.type = "file";
    input.accept = ".csv,text/csv";
    input.addEventListener("change", () => {
      const file = input.files && input.files[0];
      if (!file) {
        resolve(null);
        return;
      }
      void file.text().then((text) => resolve({ name: file.name, text }));
    });
    input.click();
  });

const root = document.getElementById("app");
if (root) {
  createApp(root, { api: new ApiClient(""), pickFile: browserFilePicker });
}
