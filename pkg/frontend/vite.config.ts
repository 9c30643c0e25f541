import react from "@vitejs/plugin-react";
import { defineConfig } from "vitest/config";

export default defineConfig({
  plugins: [react()],
  test: {
    environment: "jsdom",
    // the integration test boots the backing service, which takes a moment
    testTimeout: 60_000,
    hookTimeout: 60_000,
  },
});
