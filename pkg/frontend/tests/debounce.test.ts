import assert from "node:assert/strict";
import { test } from "node:test";
import { setTimeout as sleep } from "node:timers/promises";

import { debounce } from "../src/debounce.js";

test("rapid calls collapse into a single trailing invocation", async () => {
  const calls: string[] = [];
  const fn = debounce((value: string) => calls.push(value), 20);
  fn("a");
  fn("ab");
  fn("abc");
  await sleep(60);
  assert.deepEqual(calls, ["abc"]);
});

test("cancel drops the pending call", async () => {
  const calls: number[] = [];
  const fn = debounce((value: number) => calls.push(value), 20);
  fn(1);
  fn.cancel();
  await sleep(60);
  assert.deepEqual(calls, []);
});

test("separate bursts each fire once", async () => {
  const calls: number[] = [];
  const fn = debounce((value: number) => calls.push(value), 10);
  fn(1);
  await sleep(40);
  fn(2);
  await sleep(40);
  assert.deepEqual(calls, [1, 2]);
});
