export * from "./artifacts.js";
export * from "./ratelaws.js";
export * from "./scene.js";
export * from "./figures.js";
export { sceneToSvg } from "./svg.js";
export { sceneToPng } from "./png.js";
export { renderRunDir } from "./render.js";
