import type {
  ElicitResult,
  ExplanationEntry,
  PGraphJson,
  ServiceErrorPayload,
  SessionSnapshot,
} from "./types";

/**
 * Client view model.  Every relation, winnow and explanation shown on screen
 * is a server response stored in `rounds`; the reducer never computes
 * preference results of its own.  Reverting truncates the round list on the
 * client only; the server keeps its full history.
 */

export interface DatasetRow {
  id: string;
  values: string[];
}

export interface LoadedDataset {
  id: string;
  attributes: string[];
  rows: DatasetRow[];
}

export interface Round {
  expression: string;
  pgraph: PGraphJson;
  winnow: string[];
  explanation: ExplanationEntry[];
}

export interface Staged {
  superior: string[];
  inferior: string[];
}

export interface ViewState {
  dataset: LoadedDataset | null;
  sessionId: string | null;
  rounds: Round[];
  staged: Staged;
  accepted: Staged;
  error: ServiceErrorPayload | null;
  inspecting: string | null;
  busy: boolean;
}

export const initialState: ViewState = {
  dataset: null,
  sessionId: null,
  rounds: [],
  staged: { superior: [], inferior: [] },
  accepted: { superior: [], inferior: [] },
  error: null,
  inspecting: null,
  busy: false,
};

export type Action =
  | { type: "dataset-ready"; dataset: LoadedDataset }
  | { type: "session-ready"; snapshot: SessionSnapshot }
  | { type: "toggle-superior"; id: string }
  | { type: "toggle-inferior"; id: string }
  | { type: "feedback-accepted"; snapshot: SessionSnapshot }
  | { type: "round-complete"; result: ElicitResult }
  | { type: "service-error"; payload: ServiceErrorPayload }
  | { type: "revert"; round: number }
  | { type: "inspect"; id: string | null }
  | { type: "busy"; value: boolean }
  | { type: "dismiss-error" };

export function currentRound(state: ViewState): Round | null {
  return state.rounds.length ? state.rounds[state.rounds.length - 1] : null;
}

export function hasMarks(state: ViewState): boolean {
  const { staged, accepted } = state;
  return (
    staged.superior.length + staged.inferior.length > 0 ||
    accepted.superior.length + accepted.inferior.length > 0
  );
}

function toggled(list: string[], id: string): string[] {
  return list.includes(id) ? list.filter((x) => x !== id) : [...list, id];
}

function knownRow(state: ViewState, id: string): boolean {
  return state.dataset?.rows.some((r) => r.id === id) ?? false;
}

export function reduce(state: ViewState, action: Action): ViewState {
  switch (action.type) {
    case "dataset-ready":
      return {
        ...initialState,
        busy: state.busy,
        dataset: action.dataset,
      };

    case "session-ready": {
      const snap = action.snapshot;
      if (snap.expression === null || snap.pgraph === null) return state;
      const round0: Round = {
        expression: snap.expression,
        pgraph: snap.pgraph,
        winnow: snap.winnow,
        explanation: [],
      };
      return {
        ...state,
        sessionId: snap.id,
        rounds: [round0],
        staged: { superior: [], inferior: [] },
        accepted: { superior: snap.superior, inferior: snap.inferior },
        error: null,
        inspecting: null,
      };
    }

    case "toggle-superior": {
      if (state.busy || !knownRow(state, action.id)) return state;
      if (state.accepted.superior.includes(action.id)) return state;
      return {
        ...state,
        staged: {
          superior: toggled(state.staged.superior, action.id),
          inferior: state.staged.inferior.filter((x) => x !== action.id),
        },
      };
    }

    case "toggle-inferior": {
      if (state.busy || !knownRow(state, action.id)) return state;
      if (state.accepted.inferior.includes(action.id)) return state;
      return {
        ...state,
        staged: {
          superior: state.staged.superior.filter((x) => x !== action.id),
          inferior: toggled(state.staged.inferior, action.id),
        },
      };
    }

    case "feedback-accepted":
      return {
        ...state,
        staged: { superior: [], inferior: [] },
        accepted: {
          superior: action.snapshot.superior,
          inferior: action.snapshot.inferior,
        },
        error: null,
      };

    case "round-complete":
      return {
        ...state,
        rounds: [...state.rounds, action.result],
        staged: { superior: [], inferior: [] },
        error: null,
        inspecting: null,
      };

    case "service-error":
      return { ...state, error: action.payload };

    case "revert": {
      if (action.round < 0 || action.round >= state.rounds.length) return state;
      return {
        ...state,
        rounds: state.rounds.slice(0, action.round + 1),
        staged: { superior: [], inferior: [] },
        error: null,
        inspecting: null,
      };
    }

    case "inspect":
      return { ...state, inspecting: action.id };

    case "busy":
      return { ...state, busy: action.value };

    case "dismiss-error":
      return { ...state, error: null };
  }
}
