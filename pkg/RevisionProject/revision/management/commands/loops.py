from revision.cli import LabCommand


class Command(LabCommand):
    help = "Recherche des boucles critiques"
    command_name = "loops"
