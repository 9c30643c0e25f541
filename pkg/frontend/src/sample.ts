import type { SchemaJson } from "./types";

// The five used cars that every walkthrough starts from.

export const SAMPLE_SCHEMA: SchemaJson = {
  attributes: [
    { name: "make", kind: "categorical", ranked: ["bmw", "ford", "kia"] },
    { name: "price", kind: "numeric", preference: "lower" },
    { name: "year", kind: "numeric", preference: "higher" },
  ],
};

export const SAMPLE_CSV = `id,make,price,year
t1,ford,30000,2007
t2,bmw,45000,2008
t3,kia,20000,2007
t4,ford,40000,2008
t5,bmw,50000,2006
`;
