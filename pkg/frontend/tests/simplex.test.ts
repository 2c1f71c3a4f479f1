import assert from "node:assert/strict";
import { test } from "node:test";

import { formatWeights, renormalize, snapToGrid, weightsKey } from "../src/simplex.js";

test("renormalize maps slider values onto the simplex", () => {
  assert.deepEqual(renormalize([50, 25, 25]), [0.5, 0.25, 0.25]);
  const [a, b, c] = renormalize([10, 0, 0]);
  assert.equal(a, 1);
  assert.equal(b + c, 0);
});

test("renormalize clamps negatives and handles all-zero", () => {
  assert.deepEqual(renormalize([-5, 1, 1]), [0, 0.5, 0.5]);
  assert.deepEqual(renormalize([0, 0, 0]), [1 / 3, 1 / 3, 1 / 3]);
});

test("renormalized output always sums to one", () => {
  for (const raw of [[1, 2, 3], [0.1, 0.1, 99], [7, 0, 0.5]]) {
    const total = renormalize(raw).reduce((s, w) => s + w, 0);
    assert.ok(Math.abs(total - 1) < 1e-12);
  }
});

test("snap picks the nearest grid point by L1 distance", () => {
  const grid = [
    [0, 0.25, 0.75],
    [0.25, 0.25, 0.5],
    [0.5, 0.25, 0.25],
  ];
  assert.deepEqual(snapToGrid([0.24, 0.26, 0.5], grid), [0.25, 0.25, 0.5]);
});

test("snap breaks ties lexicographically like the server", () => {
  const grid = [
    [1, 0],
    [0, 1],
  ];
  assert.deepEqual(snapToGrid([0.5, 0.5], grid), [0, 1]);
});

test("weightsKey distinguishes grid points and formatWeights is display-only", () => {
  assert.notEqual(weightsKey([0.2, 0.3, 0.5]), weightsKey([0.3, 0.2, 0.5]));
  assert.equal(formatWeights([0.2, 0.3, 0.5]), "0.20 / 0.30 / 0.50");
});
