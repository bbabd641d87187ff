from revision.cli import LabCommand


class Command(LabCommand):
    help = "Audit (G1)–(G6) d'un opérateur et/ou fidélité d'une affectation"
    command_name = "audit"
