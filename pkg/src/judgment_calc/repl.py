"""Interactive line-oriented front end over a :class:`Session`."""

from __future__ import annotations

import cmd
import shlex
from typing import Optional

from .circumstance import cond_prob, prob
from .cli import UsageError, format_history, rational, run_counterfactual, run_imply, run_judge, split_arrow
from .errors import JudgmentError
from .evidence import evidence
from .implication import ImplicationMode
from .info import info
from .scenarios import format_bits
from .session import Session, save_session


class JudgmentRepl(cmd.Cmd):
    intro = "judgment calculus; type help or ? for commands"
    prompt = "judge> "

    def __init__(self, session: Session, path: Optional[str] = None, stdin=None, stdout=None):
        super().__init__(stdin=stdin, stdout=stdout)
        if stdin is not None:
            self.use_rawinput = False
        self.session = session
        self.path = path

    def say(self, *lines: str) -> None:
        for line in lines:
            self.stdout.write(line + "\n")

    def onecmd(self, line):
        try:
            return super().onecmd(line)
        except UsageError as exc:
            self.say(f"usage error: {exc}")
        except JudgmentError as exc:
            self.say(f"{type(exc).__name__}: {exc}")
        except (ValueError, OSError) as exc:
            self.say(f"error: {exc}")
        return False

    def emptyline(self):
        return False

    def default(self, line):
        self.say(f"unknown command: {line.split()[0]}")

    # -- queries

    def do_prob(self, arg):
        """prob <formula>: unconditional probability."""
        self.say(rational(prob(self.session.current, self.session.parse(arg))))

    def do_cond(self, arg):
        """cond <b> given <a>: P(b | a)."""
        left, sep, right = arg.partition(" given ")
        if not sep:
            raise UsageError("write 'cond <formula> given <formula>'")
        c = self.session.current
        self.say(rational(cond_prob(c, self.session.parse(left), self.session.parse(right))))

    def do_info(self, arg):
        """info <formula>: information in bits."""
        self.say(format_bits(info(self.session.current, self.session.parse(arg))))

    def do_evidence(self, arg):
        """evidence <f1> -> <f2>: evidence that f1 carries for f2."""
        left, right = split_arrow(arg)
        c = self.session.current
        self.say(format_bits(evidence(c, self.session.parse(left), self.session.parse(right))))

    def do_show(self, arg):
        """show: tiers of the current circumstance."""
        c = self.session.current
        for k, tier in enumerate(c.tiers):
            self.say(f"tier {k}:")
            for w, x in tier.weights.items():
                self.say(f"  {c.space.describe_world(w):<30} {rational(x)}")

    # -- judgments

    def do_judge(self, arg):
        """judge <formula>: give a proposition."""
        self.say(*run_judge(self.session, arg))

    def do_imply(self, arg):
        """imply <a> <b> --mode <m> [--apply | --construct-t --info-t <bits>]"""
        words = shlex.split(arg)
        mode, info_t, apply, construct, rest = None, None, False, False, []
        it = iter(words)
        for w in it:
            if w == "--mode":
                mode = next(it, None)
            elif w == "--info-t":
                try:
                    info_t = float(next(it, ""))
                except ValueError:
                    raise UsageError("--info-t needs a number of bits") from None
            elif w == "--apply":
                apply = True
            elif w == "--construct-t":
                construct = True
            else:
                rest.append(w)
        if len(rest) != 2 or mode not in {m.value for m in ImplicationMode}:
            raise UsageError("imply <a> <b> --mode material|sufficient|necessary|conservative")
        self.say(*run_imply(self.session, rest[0], rest[1], mode, apply, construct, info_t))

    def do_counterfactual(self, arg):
        """counterfactual <a> <b>: make a sufficient for b while P(a) = 0."""
        words = shlex.split(arg)
        if len(words) != 2:
            raise UsageError("counterfactual <a> <b>")
        self.say(*run_counterfactual(self.session, *words))

    def do_let(self, arg):
        """let <name> = <formula>: bind a name."""
        name, sep, formula = arg.partition("=")
        name = name.strip()
        if not sep or not name.isidentifier():
            raise UsageError("let <name> = <formula>")
        self.session.bind(name, formula.strip())
        self.say(f"P({name}) = {rational(prob(self.session.current, self.session.parse(name)))}")

    def do_undo(self, arg):
        """undo: drop the last judgment and replay the rest."""
        before = self.session.current
        op = self.session.undo()
        if op is None:
            self.say("nothing to undo")
            return
        after = self.session.current
        for name in after.space.atoms:
            old = prob(before, before.space.atom(name))
            new = prob(after, after.space.atom(name))
            if old != new:
                self.say(f"P({name}): {rational(old)} -> {rational(new)}")

    def do_history(self, arg):
        """history: list recorded judgments."""
        self.say(*(format_history(self.session) or ["(empty history)"]))

    def do_save(self, arg):
        """save [path]: write the session file."""
        path = arg.strip() or self.path
        if not path:
            raise UsageError("save <path>")
        save_session(self.session, path)
        self.path = path
        self.say(f"saved {path}")

    def do_quit(self, arg):
        """quit: leave without saving."""
        return True

    do_exit = do_quit
    do_EOF = do_quit
