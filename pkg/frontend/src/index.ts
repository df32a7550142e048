export { ApiClient, ApiError } from "./api.js";
export type { Contribution, Diagnostic, EntityLink, GeoJsonPolygon, Section } from "./api.js";
export { EditorController } from "./editor.js";
export type { EditorState } from "./editor.js";
export { ZoneController } from "./zone.js";
export type { ZoneState } from "./zone.js";
export { ModerationController } from "./moderation.js";
export type { ModerationState, QueueItem } from "./moderation.js";
export { fitViewBox, polygonPath, verticesPath } from "./map.js";
export { startApp } from "./app.js";
