"""
Varredura da matriz de transferência módulo um primo.

O vetor de contagens é indexado pelo hash perfeito. Cada movimento é
aplicado sobre o próprio vetor, em blocos de até MOVE_CHUNK assinaturas
ordenadas pela chave do divisor: um bloco lê as suas origens antes de
escrever, e os destinos fora dele já foram processados. Só o vetor, as
palavras, as chaves e a ordem têm o tamanho do domínio; o resto é
limitado pelo bloco. A versão auditada refaz o trabalho assinatura por
assinatura e acusa qualquer leitura de uma contagem já escrita.
"""
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional, Tuple, Union

import numpy as np

from config import MEMORY_BUDGET_MB, MOVE_CHUNK, WORKERS
from core.errors import InPlaceViolationError, MalformedSignatureError, MemoryBudgetError
from core.motzkin import tables_for
from core.perfect_hash import SENTINEL, HashFunction, build_hash
from core.problems import Move, ProblemSpec, Require, Schedule, Shift, get_problem
from core.signature import ORDER_CODE, EdgeState, Signature
from utils.logger import logger, sweep_logger

EMPTY, UPPER, LOWER = int(EdgeState.EMPTY), int(EdgeState.UPPER), int(EdgeState.LOWER)
FULL_MOVE = Move(position=0)


class TransitionKind(Enum):
    UNCHANGED = "unchanged"
    OPEN = "open"  # ∘∘ → ()
    SWAP = "swap"  # X∘ ↔ ∘X
    JOIN_LOWER = "join-lower"  # (( → ∘∘, par de cima vira (
    JOIN_UPPER = "join-upper"  # )) → ∘∘, par de baixo vira )
    JOIN_THROUGH = "join-through"  # )( → ∘∘


def _state(word: int, pos: int) -> int:
    return (word >> (2 * pos)) & 0b11


def _partner_word(word: int, pos: int, width: int) -> int:
    state = _state(word, pos)
    step, same = (1, LOWER) if state == LOWER else (-1, UPPER)
    depth = 0
    j = pos
    while 0 <= j < width:
        s = _state(word, j)
        if s == same:
            depth += 1
        elif s != EMPTY:
            depth -= 1
            if depth == 0:
                return j
        j += step
    raise MalformedSignatureError(f"Extremo em {pos} sem par na palavra {word:#x}")


def word_targets(word: int, width: int, k: int, move: Move) -> List[Tuple[int, TransitionKind]]:
    """Destinos de uma palavra no movimento sobre o par (k, k+1)."""
    a, b = _state(word, k), _state(word, k + 1)
    cleared = word & ~(0b1111 << (2 * k))
    out: List[Tuple[int, TransitionKind]] = []
    if a == EMPTY and b == EMPTY:
        out.append((word, TransitionKind.UNCHANGED))
        if move.link and move.lower_out and move.upper_out:
            out.append((word | (LOWER << (2 * k)) | (UPPER << (2 * k + 2)), TransitionKind.OPEN))
    elif b == EMPTY:
        if move.lower_out:
            out.append((word, TransitionKind.UNCHANGED))
        if move.link and move.upper_out:
            out.append((cleared | (a << (2 * k + 2)), TransitionKind.SWAP))
    elif a == EMPTY:
        if move.upper_out:
            out.append((word, TransitionKind.UNCHANGED))
        if move.link and move.lower_out:
            out.append((cleared | (b << (2 * k)), TransitionKind.SWAP))
    else:
        if move.pass_both and move.lower_out and move.upper_out:
            out.append((word, TransitionKind.UNCHANGED))
        if move.link:
            if a == LOWER and b == LOWER:
                q = _partner_word(word, k + 1, width)
                out.append((cleared ^ (0b11 << (2 * q)), TransitionKind.JOIN_LOWER))
            elif a == UPPER and b == UPPER:
                q = _partner_word(word, k, width)
                out.append((cleared ^ (0b11 << (2 * q)), TransitionKind.JOIN_UPPER))
            elif a == UPPER and b == LOWER:
                out.append((cleared, TransitionKind.JOIN_THROUGH))
            # () fecharia um laço
    return out


def apply_update(source: Signature, kink: int, move: Optional[Move] = None) -> List[Tuple[Signature, TransitionKind]]:
    """
    Regras locais de um movimento.

    Args:
        source: Assinatura de origem
        kink: Posição k do par (k, k+1) substituído
        move: Bandeiras do movimento; padrão é o movimento hexagonal completo

    Returns:
        Lista de (assinatura de destino, tipo de transição)
    """
    if not 0 <= kink < source.width - 1:
        raise ValueError(f"Dobra {kink} fora de 0..{source.width - 2}")
    move = move or FULL_MOVE
    return [
        (Signature(source.width, w, source.start_height), kind)
        for w, kind in word_targets(source.bits, source.width, kink, move)
    ]


def divider_for(move_position: int, hash_divider: int) -> int:
    """l_t = l_h - 1, exceto l_b = l_t - 1 quando o par cruzaria l_t."""
    l_t = hash_divider - 1
    d = l_t - 1 if move_position + 1 == l_t else l_t
    return max(d, 0)


@dataclass
class MovePlan:
    drop: np.ndarray
    src: np.ndarray
    tgt: np.ndarray


def _partners_vectorized(words: np.ndarray, pos: int, width: int, upward: bool) -> np.ndarray:
    depth = np.ones(len(words), dtype=np.int64)
    found = np.full(len(words), -1, dtype=np.int64)
    rng = range(pos + 1, width) if upward else range(pos - 1, -1, -1)
    opener, closer = (LOWER, UPPER) if upward else (UPPER, LOWER)
    for j in rng:
        s = (words >> np.int64(2 * j)) & np.int64(3)
        depth += (s == opener).astype(np.int64) - (s == closer).astype(np.int64)
        hit = (depth == 0) & (found < 0)
        found[hit] = j
    if np.any(found < 0):
        raise MalformedSignatureError(f"Extremo em {pos} sem par")
    return found


def plan_move(words: np.ndarray, move: Move, hf: HashFunction, slots: Optional[np.ndarray] = None) -> MovePlan:
    """
    Origens descartadas e pares (origem, destino) não triviais, em slots.

    `slots` dá o slot de cada palavra quando `words` é só um bloco do vetor.
    """
    k = move.position
    sa, sb = np.int64(2 * k), np.int64(2 * k + 2)
    a = (words >> sa) & np.int64(3)
    b = (words >> sb) & np.int64(3)
    ea, eb = a == EMPTY, b == EMPTY

    keep = np.ones(len(words), dtype=bool)
    keep[~ea & eb] = move.lower_out
    keep[ea & ~eb] = move.upper_out
    keep[~ea & ~eb] = move.pass_both and move.lower_out and move.upper_out

    src: List[np.ndarray] = []
    tgt: List[np.ndarray] = []
    if move.link:
        clear = np.int64(~(0b1111 << (2 * k)))

        def emit(mask: np.ndarray, make):
            idx = np.nonzero(mask)[0]
            if len(idx):
                src.append(idx)
                tgt.append(make(words[idx], idx))

        if move.lower_out and move.upper_out:
            emit(ea & eb, lambda w, i: w | np.int64((LOWER << (2 * k)) | (UPPER << (2 * k + 2))))
        if move.upper_out:
            emit(~ea & eb, lambda w, i: (w & clear) | (a[i] << sb))
        if move.lower_out:
            emit(ea & ~eb, lambda w, i: (w & clear) | (b[i] << sa))
        emit(
            (a == LOWER) & (b == LOWER),
            lambda w, i: (w & clear) ^ (np.int64(3) << (2 * _partners_vectorized(w, k + 1, hf.width, True))),
        )
        emit(
            (a == UPPER) & (b == UPPER),
            lambda w, i: (w & clear) ^ (np.int64(3) << (2 * _partners_vectorized(w, k, hf.width, False))),
        )
        emit((a == UPPER) & (b == LOWER), lambda w, i: w & clear)

    if src:
        src_all = np.concatenate(src)
        tgt_all = hf.slots(np.concatenate(tgt))
    else:
        src_all = tgt_all = np.zeros(0, dtype=np.int64)
    drop = np.nonzero(~keep)[0]
    if slots is not None:
        drop, src_all = slots[drop], slots[src_all]
    return MovePlan(drop=drop, src=src_all, tgt=tgt_all)


def divider_keys(words: np.ndarray, divider: int, width: int, start_height: int) -> np.ndarray:
    """
    Chave (h, esquerda, direita) de cada palavra empacotada num int64.

    h é a altura no divisor; as metades usam os códigos ∘ < ( < ) em base 3.
    """
    h = np.full(len(words), start_height, dtype=np.int64)
    left = np.zeros(len(words), dtype=np.int64)
    right = np.zeros(len(words), dtype=np.int64)
    for i in range(width):
        s = (words >> np.int64(2 * i)) & np.int64(3)
        code = np.where(s == LOWER, 1, np.where(s == UPPER, 2, 0)).astype(np.int64)
        if i < divider:
            h += (s == LOWER).astype(np.int64) - (s == UPPER).astype(np.int64)
            left += code * 3 ** i
        else:
            right += code * 3 ** (i - divider)
    return (h * 3 ** divider + left) * 3 ** (width - divider) + right


def _partner_words(words: np.ndarray, k: int) -> np.ndarray:
    """Parceiro de troca ou abertura no par (k, k+1); -1 se não houver."""
    sa, sb = np.int64(2 * k), np.int64(2 * k + 2)
    pair_bits = np.int64(0b1111 << (2 * k))
    open_bits = np.int64((LOWER << (2 * k)) | (UPPER << (2 * k + 2)))
    a = (words >> sa) & np.int64(3)
    b = (words >> sb) & np.int64(3)
    rest = words & ~pair_bits
    out = np.full(len(words), -1, dtype=np.int64)
    m = (a != EMPTY) & (b == EMPTY)
    out[m] = rest[m] | (a[m] << sb)
    m = (a == EMPTY) & (b != EMPTY)
    out[m] = rest[m] | (b[m] << sa)
    m = (a == EMPTY) & (b == EMPTY)
    out[m] = words[m] | open_bits
    m = (words & pair_bits) == open_bits
    out[m] = rest[m]
    return out


def scatter_add_mod(counts: np.ndarray, idx: np.ndarray, vals: np.ndarray, p: int) -> None:
    """counts[idx] += vals (mod p) com índices repetidos, em rodadas sem colisão."""
    if not len(idx):
        return
    order = np.argsort(idx, kind="stable")
    idx, vals = idx[order], vals[order]
    pos = np.arange(len(idx))
    first = np.ones(len(idx), dtype=bool)
    first[1:] = idx[1:] != idx[:-1]
    rank = pos - np.maximum.accumulate(np.where(first, pos, 0))
    modulus = np.int64(p)
    for r in range(int(rank.max()) + 1):
        sel = rank == r
        i = idx[sel]
        s = counts[i] + vals[sel]
        counts[i] = np.where(s >= modulus, s - modulus, s)


def _occupancy_key(words: np.ndarray, move: Move, divider: int, width: int) -> np.ndarray:
    """Padrão de ocupação da metade que não contém a dobra."""
    k = move.position
    if k + 1 < divider:
        positions = range(divider, width)
    else:
        positions = range(0, min(divider, k))
    mask = 0
    for j in positions:
        mask |= 0b11 << (2 * j)
    w = words & np.int64(mask)
    return ((w | (w >> np.int64(1))) & np.int64(0x5555555555555555 & mask))


@dataclass
class CountVector:
    prime: int
    data: np.ndarray
    L: int
    problem: str
    dividers: List[int] = field(default_factory=list)

    def residue(self, slots: List[int]) -> int:
        return int(sum(int(self.data[s]) for s in slots) % self.prime)


class TransferMatrix:
    """
    Varredura de um problema em tamanho L; hash, palavras e cronograma
    ficam em cache entre primos.
    """

    def __init__(
        self,
        problem: Union[str, ProblemSpec],
        L: int,
        workers: Optional[int] = None,
        memory_budget_mb: Optional[int] = None,
        chunk: Optional[int] = None,
    ):
        self.problem = get_problem(problem) if isinstance(problem, str) else problem
        self.L = L
        self.workers = max(1, workers if workers is not None else WORKERS)
        self.memory_budget_mb = memory_budget_mb if memory_budget_mb is not None else MEMORY_BUDGET_MB
        self.chunk = max(1, chunk if chunk is not None else MOVE_CHUNK)
        self.schedule: Schedule = self.problem.schedule(L)
        self._check_memory()
        self.hash: HashFunction = build_hash(self.schedule.width - 1, self.schedule.start_height)
        self.words = self.hash.words()
        self._slot_of: Optional[Dict[int, int]] = None

    def _check_memory(self) -> None:
        width = self.schedule.width
        total = tables_for(width).count(self.schedule.start_height, width, 0)
        m = width // 2
        # contagens, palavras, chaves e ordem do movimento, mais os planos de um bloco
        chunk = min(self.chunk, total)
        estimate = 8 * total * 5 + 8 * chunk * 8 + 8 * ((1 << (2 * m)) + (1 << (2 * (width - m))))
        budget = self.memory_budget_mb * 1024 * 1024
        if estimate > budget:
            raise MemoryBudgetError(
                f"{self.problem.id} L={self.L}: {total} assinaturas exigem ~{estimate >> 20} MB "
                f"(orçamento {self.memory_budget_mb} MB)"
            )

    @property
    def size(self) -> int:
        return self.hash.total

    @property
    def slot_of(self) -> Dict[int, int]:
        if self._slot_of is None:
            self._slot_of = {int(w): i for i, w in enumerate(self.words)}
        return self._slot_of

    def _slots(self, signatures) -> List[int]:
        return [self.hash.index_of(s) - 1 for s in signatures]

    def _initial(self, p: int) -> CountVector:
        data = np.zeros(self.size, dtype=np.int64)
        for slot in self._slots(self.schedule.initial):
            data[slot] = (data[slot] + 1) % p
        return CountVector(prime=p, data=data, L=self.L, problem=self.problem.id)

    # -------- passos não-movimento (iguais nas três variantes) --------

    def _shift(self, counts: np.ndarray) -> np.ndarray:
        ok = np.nonzero((self.words & np.int64(3)) == 0)[0]
        shifted = np.zeros_like(counts)
        shifted[self.hash.slots(self.words[ok] >> np.int64(2))] = counts[ok]
        return shifted

    def _require(self, counts: np.ndarray, step: Require) -> None:
        counts[((self.words >> np.int64(2 * step.position)) & np.int64(3)) == 0] = 0

    # ------------------------------ varreduras ------------------------------

    def run(self, p: int, mode: str = "inplace") -> CountVector:
        """
        Executa o cronograma completo.

        Args:
            p: Primo (< 2^62)
            mode: "inplace", "reference" ou "audited"

        Returns:
            CountVector final
        """
        apply = {
            "inplace": self._apply_inplace,
            "reference": self._apply_reference,
            "audited": self._apply_audited,
        }[mode]
        vector = self._initial(p)
        counts = vector.data
        column = None
        for step in self.schedule.steps:
            if step.column != column:
                column = step.column
                logger.info(f"🔄 {self.problem.id} L={self.L} p={p}: coluna {column}")
            if isinstance(step, Shift):
                counts = self._shift(counts)
            elif isinstance(step, Require):
                self._require(counts, step)
            else:
                d = divider_for(step.position, self.hash.divider)
                vector.dividers.append(d)
                apply(counts, step, d, p)
        vector.data = counts
        return vector

    def residue(self, p: int, mode: str = "inplace") -> int:
        try:
            vector = self.run(p, mode)
            result = vector.residue(self._slots(self.schedule.accepting))
            logger.info(f"✅ {self.problem.id} L={self.L} mod {p} = {result}")
            return result
        except Exception as e:
            logger.error(f"❌ Varredura {self.problem.id} L={self.L} falhou: {e}", exc_info=True)
            raise

    def group_keys(self, move: Move, divider: int) -> np.ndarray:
        """
        Chave de processamento de cada slot: a menor chave do divisor entre a
        palavra e o seu parceiro de troca ou abertura, quando ele existe.
        """
        hf = self.hash
        width, n = hf.width, len(self.words)
        out = np.empty(n, dtype=np.int64)
        shift = np.int64(2 * hf.divider)
        for start in range(0, n, self.chunk):
            words = self.words[start:start + self.chunk]
            keys = divider_keys(words, divider, width, self.schedule.start_height)
            partner = _partner_words(words, move.position)
            found = partner >= 0
            left = np.full(len(words), SENTINEL, dtype=np.int64)
            right = np.full(len(words), SENTINEL, dtype=np.int64)
            left[found] = hf.phi_left[partner[found] & np.int64(hf.left_mask)]
            right[found] = hf.phi_right[partner[found] >> shift]
            slot = np.where((left != SENTINEL) & (right != SENTINEL), left + right - 1, -1)
            slot[(slot < 0) | (slot >= n)] = -1
            member = slot >= 0
            member[member] = self.words[slot[member]] == partner[member]
            other = divider_keys(partner[member], divider, width, self.schedule.start_height)
            keys[member] = np.minimum(keys[member], other)
            out[start:start + len(words)] = keys
        return out

    def _apply_inplace(self, counts: np.ndarray, move: Move, divider: int, p: int) -> None:
        """
        Aplica o movimento em blocos na ordem do divisor.

        Cada bloco lê as suas origens, zera as descartadas e soma nos destinos;
        destinos vivos fora do bloco só podem estar em blocos já processados.
        """
        keys = self.group_keys(move, divider)
        order = np.argsort(keys, kind="stable")
        n = len(order)
        pool = ThreadPoolExecutor(max_workers=self.workers) if self.workers > 1 else None
        transitions, start = 0, 0
        try:
            while start < n:
                end = min(start + self.chunk, n)
                # um par de parceiros nunca fica dividido entre blocos
                while end < n and keys[order[end]] == keys[order[end - 1]]:
                    end += 1
                block = np.sort(order[start:end])
                plan = plan_move(self.words[block], move, self.hash, block)
                vals = counts[plan.src]
                counts[plan.drop] = 0
                live = vals != 0
                limit = keys[order[end - 1]]
                if np.any(keys[plan.tgt[live]] > limit):
                    raise InPlaceViolationError(
                        f"{self.problem.id} L={self.L} k={move.position} divisor={divider}: "
                        f"destino ainda não lido no bloco {start}..{end}"
                    )
                self._scatter(counts, plan, vals, move, divider, p, pool)
                transitions += len(plan.src)
                start = end
        finally:
            if pool is not None:
                pool.shutdown()
        sweep_logger.debug(f"   movimento k={move.position} divisor={divider}: {transitions} transições")

    def _scatter(self, counts, plan: MovePlan, vals, move: Move, divider: int, p: int, pool) -> None:
        if pool is None or len(plan.src) < 2:
            scatter_add_mod(counts, plan.tgt, vals, p)
            return
        keys = _occupancy_key(self.words[plan.src], move, divider, self.hash.width)
        _, group = np.unique(keys, return_inverse=True)
        owner = group % self.workers
        jobs = [
            pool.submit(scatter_add_mod, counts, plan.tgt[owner == w], vals[owner == w], p)
            for w in range(self.workers)
        ]
        for job in jobs:
            job.result()

    def _apply_reference(self, counts: np.ndarray, move: Move, divider: int, p: int) -> None:
        fresh = np.zeros_like(counts)
        width = self.hash.width
        for i in np.nonzero(counts)[0]:
            v = int(counts[i])
            for w, _ in word_targets(int(self.words[i]), width, move.position, move):
                t = self.slot_of[w]
                fresh[t] = (int(fresh[t]) + v) % p
        counts[:] = fresh

    def _order_key(self, word: int, divider: int) -> Tuple[int, int, int]:
        width = self.hash.width
        h = self.schedule.start_height
        left = right = 0
        for i in range(width):
            state = _state(word, i)
            code = ORDER_CODE[EdgeState(state)]
            if i < divider:
                h += 1 if state == LOWER else -1 if state == UPPER else 0
                left += code * 3 ** i
            else:
                right += code * 3 ** (i - divider)
        return h, left, right

    def _apply_audited(self, counts: np.ndarray, move: Move, divider: int, p: int) -> None:
        k = move.position
        width = self.hash.width
        slot_of = self.slot_of
        pair_bits = 0b1111 << (2 * k)
        open_bits = (LOWER << (2 * k)) | (UPPER << (2 * k + 2))

        def partner(word: int) -> Optional[int]:
            a, b = _state(word, k), _state(word, k + 1)
            rest = word & ~pair_bits
            if a != EMPTY and b == EMPTY:
                return rest | (a << (2 * k + 2))
            if a == EMPTY and b != EMPTY:
                return rest | (b << (2 * k))
            if a == EMPTY and b == EMPTY:
                return word | open_bits
            if word & pair_bits == open_bits:
                return rest
            return None

        groups: Dict[int, Tuple[Tuple[int, int, int], List[int]]] = {}
        for i, w in enumerate(self.words.tolist()):
            other = partner(w)
            j = slot_of.get(other) if other is not None else None
            rep = i if j is None else min(i, j)
            key = self._order_key(w, divider)
            if rep in groups:
                old_key, members = groups[rep]
                groups[rep] = (min(old_key, key), members + [i])
            else:
                groups[rep] = (key, [i])

        written = np.zeros(len(counts), dtype=bool)
        for key, members in sorted(groups.values()):
            if written[members].any():
                raise InPlaceViolationError(
                    f"{self.problem.id} L={self.L} k={k} divisor={divider}: "
                    f"contagem lida após escrita no grupo {key}"
                )
            old = {m: int(counts[m]) for m in members}
            local = {m: 0 for m in members}
            for m in members:
                if not old[m]:
                    continue
                for w, _ in word_targets(int(self.words[m]), width, k, move):
                    t = slot_of[w]
                    if t in local:
                        local[t] = (local[t] + old[m]) % p
                    else:
                        counts[t] = (int(counts[t]) + old[m]) % p
                        written[t] = True
            for m in members:
                counts[m] = local[m]


def _matrix(problem: Union[str, ProblemSpec], L: int, workers: int = 1) -> TransferMatrix:
    return TransferMatrix(problem, L, workers=workers)


def sweep(problem: Union[str, ProblemSpec], L: int, p: int, workers: int = 1) -> int:
    """Resíduo de C_L(1) (ou P_L(1)) módulo p, com atualização no próprio vetor."""
    return _matrix(problem, L, workers).residue(p)


def reference_sweep(problem: Union[str, ProblemSpec], L: int, p: int) -> int:
    """Mesma contagem com vetores separados de origem e destino a cada movimento."""
    return _matrix(problem, L).residue(p, mode="reference")


def audited_sweep(problem: Union[str, ProblemSpec], L: int, p: int) -> int:
    """Varredura sequencial na ordem do divisor; InPlaceViolationError se a ordem falhar."""
    return _matrix(problem, L).residue(p, mode="audited")
